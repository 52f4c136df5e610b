// mpilab: check, gen and suite front-end.
#include "mpilab/corpus.hpp"
#include "mpilab/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace mpilab;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kInputError = 2;

struct OutputOptions {
  std::string format = "json";
  std::string out;
  bool timing = false;
};

void emit(const std::string& text, const OutputOptions& o) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

Tolerances tolerances(double tol) {
  Tolerances t = Tolerances::from_env();
  if (tol > 0) {
    t.residual = tol;
    t.membership = tol;
  }
  return t;
}

Level level_or_throw(const std::string& s) {
  auto l = parse_level(s);
  if (!l) throw InputError("unknown level '" + s + "'");
  return *l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for multiplicative partial isometries"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  OutputOptions out;
  std::string level = "all";
  double tol = 0.0;
  std::uint64_t seed = 0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--level", level, "axioms|coalgebra|base|manageability|antipode|all");
    sub->add_option("--tol", tol, "residual tolerance (overrides MPI_LAB_TOL)");
    sub->add_option("--seed", seed, "seed for randomized parts");
    sub->add_option("--report", out.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out.out, "write the report here instead of stdout");
    sub->add_flag("--timing", out.timing, "include wall times");
  };

  auto* check = app.add_subcommand("check", "run the check suite on an operator file");
  std::string op_path, q_path;
  check->add_option("operator", op_path, "operator JSON")->required();
  check->add_option("--q", q_path, "positive Q as a one-leg operator JSON");
  add_output(check);

  auto* gen = app.add_subcommand("gen", "write a fixture operator");
  std::string kind, table_path, spec_path, gen_out;
  gen->add_option("kind", kind, "example|group|groupoid")->required()->check(
      CLI::IsMember({"example", "group", "groupoid"}));
  gen->add_option("--table", table_path, "group table JSON");
  gen->add_option("--spec", spec_path, "groupoid spec JSON");
  gen->add_option("--out", gen_out, "output path")->required();

  auto* suite = app.add_subcommand("suite", "run the built-in corpus");
  bool corpus = false;
  int conjugations = 4;
  suite->add_flag("--corpus", corpus, "the standard corpus")->required();
  suite->add_option("--conjugations", conjugations, "seeded unitary conjugations appended to the corpus");
  add_output(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*check) {
      const Operator w = load_operator(op_path);
      std::optional<Operator> q;
      if (!q_path.empty()) q = load_operator(q_path);
      const CheckReport r = run_suite(op_path, w, q, level_or_throw(level), tolerances(tol), seed);
      emit(out.format == "json" ? to_json(r, out.timing).dump(2) + "\n" : to_text(r, out.timing), out);
      return r.verdict() ? kOk : kFailed;
    }
    if (*gen) {
      Operator w;
      if (kind == "example") {
        w = matrix_unit_example();
      } else if (kind == "group") {
        if (table_path.empty()) throw InputError("gen group needs --table");
        w = group_mpu(group_table_from_json(read_json_file(table_path)));
      } else {
        if (spec_path.empty()) throw InputError("gen groupoid needs --spec");
        w = groupoid_mpi(groupoid_from_json(read_json_file(spec_path)));
      }
      save_operator(w, gen_out);
      return kOk;
    }
    if (*suite) {
      const Level l = level_or_throw(level);
      const Tolerances t = tolerances(tol);
      auto fixtures = standard_corpus();
      if (conjugations > 0)
        for (auto& f : conjugated_corpus(seed, conjugations)) fixtures.push_back(std::move(f));
      bool all = true;
      json reports = json::array();
      std::string text;
      for (const auto& f : fixtures) {
        const CheckReport r = run_suite(f.id, f.w, std::nullopt, l, t, seed);
        all = all && r.verdict();
        if (out.format == "json") reports.push_back(to_json(r, out.timing));
        else text += to_text(r, out.timing);
      }
      if (out.format == "json") {
        const json doc = {{"version", kVersion},
                          {"seed", seed},
                          {"level", level_name(l)},
                          {"verdict", all ? "pass" : "fail"},
                          {"reports", std::move(reports)}};
        emit(doc.dump(2) + "\n", out);
      } else {
        emit(text, out);
      }
      return all ? kOk : kFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const SpaceError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
