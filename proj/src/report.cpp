#include "mpilab/report.hpp"

#include "mpilab/antipode.hpp"
#include "mpilab/base.hpp"
#include "mpilab/coalgebra.hpp"
#include "mpilab/manageability.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mpilab {

using nlohmann::json;

std::optional<Level> parse_level(const std::string& s) {
  if (s == "axioms") return Level::Axioms;
  if (s == "coalgebra") return Level::Coalgebra;
  if (s == "base") return Level::Base;
  if (s == "manageability") return Level::Manageability;
  if (s == "antipode") return Level::Antipode;
  if (s == "all") return Level::All;
  return std::nullopt;
}

const char* level_name(Level l) {
  switch (l) {
    case Level::Axioms: return "axioms";
    case Level::Coalgebra: return "coalgebra";
    case Level::Base: return "base";
    case Level::Manageability: return "manageability";
    case Level::Antipode: return "antipode";
    case Level::All: return "all";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
    case Status::Info: return "info";
  }
  return "?";
}

bool CheckReport::verdict() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

const CheckEntry* CheckReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(CheckReport& r) : r_(r) {}

  void residual(const std::string& id, double value, std::string note = "") {
    CheckEntry e{id, Status::Pass, value, std::move(note), 0.0};
    if (!std::isfinite(value)) {
      e.residual = 0.0;
      e.status = Status::Fail;
      e.note = "non-finite residual";
    } else if (!(value < r_.tol.residual)) {
      e.status = Status::Fail;
    }
    r_.checks.push_back(std::move(e));
  }
  void flag(const std::string& id, bool ok, double value = 0.0, std::string note = "") {
    r_.checks.push_back({id, ok ? Status::Pass : Status::Fail, std::isfinite(value) ? value : 0.0, std::move(note), 0.0});
  }
  void info(const std::string& id, std::string note, double value = 0.0) {
    r_.checks.push_back({id, Status::Info, std::isfinite(value) ? value : 0.0, std::move(note), 0.0});
  }
  void skip(const std::string& id, std::string reason) {
    r_.checks.push_back({id, Status::Skip, 0.0, std::move(reason), 0.0});
  }

  // entries added since the last call get the elapsed wall time
  void lap() {
    const auto now = Clock::now();
    const double s = std::chrono::duration<double>(now - t0_).count();
    for (std::size_t k = mark_; k < r_.checks.size(); ++k) r_.checks[k].seconds = s;
    mark_ = r_.checks.size();
    t0_ = now;
  }

 private:
  CheckReport& r_;
  std::size_t mark_ = 0;
  Clock::time_point t0_ = Clock::now();
};

std::string tf(bool b) { return b ? "true" : "false"; }

void record_leg_algebra(Recorder& rec, const std::string& p, const LegAlgebra& a) {
  rec.residual(p + "algebra", a.product_residual, "dim " + std::to_string(a.space.dim()));
  rec.info(p + "unital", tf(a.unital), a.unital_residual);
  rec.info(p + "star_closed", tf(a.star_closed), a.star_residual);
}

void record_coalgebra(Recorder& rec, const std::string& p, const CoalgebraReport& c) {
  rec.residual(p + "delta_star", c.delta_star);
  rec.residual(p + "delta_homomorphism", c.homomorphism);
  rec.residual(p + "E_is_delta_1", c.E_is_delta1);
  rec.residual(p + "E_legs_commute", c.E_legs_commute);
  rec.info(p + "E_legs_reversed_form", "W23*W12*W12W23 form, not implied by the axioms", c.E_legs_alt);
  rec.residual(p + "E_multiplier", c.E_multiplier);
  rec.residual(p + "commutation_lemma", c.commutation_lemma);
  rec.residual(p + "delta_range", c.delta_range.residual);
  rec.residual(p + "delta_range_left", c.delta_range_left.residual);
  static const char* kDensity[] = {"(a(x)1)Db", "(Da)(1(x)b)", "(Da)(b(x)1)", "(1(x)a)Db"};
  for (int k = 0; k < 4; ++k)
    rec.residual(p + "density_" + std::to_string(k + 1), c.density_residual[k],
                 std::string(kDensity[k]) + ": span dim " + std::to_string(c.density_dims[k]) + ", dim A " +
                     std::to_string(c.dim_A));
  for (int k = 0; k < 4; ++k) rec.residual(p + "multiplier_" + std::to_string(k + 1), c.membership[k]);
  rec.residual(p + "coassociativity", c.coassociativity);
  rec.residual(p + "product_closure", c.product_closure);
}

void record_certificate(Recorder& rec, const std::string& p, const Operator& w, const ManageabilityCertificate& c) {
  rec.residual(p + "cond1", c.residual_cond1);
  rec.residual(p + "cond3a", c.residual_cond3a);
  rec.residual(p + "cond3b", c.residual_cond3b);
  rec.residual(p + "alt_characterization", c.residual_alt_char);
  rec.residual(p + "cond2_grid", condition2_residual(w, c.Q, c.Wtilde));
  rec.residual(p + "covariance_W", c.covariance_W);
  rec.residual(p + "covariance_Wtilde", c.covariance_Wtilde);
  rec.residual(p + "inclusion_E", c.inclusion_E);
  rec.residual(p + "inclusion_G", c.inclusion_G);
}

void record_antipode(Recorder& rec, const std::string& p, const AntipodeResiduals& a) {
  rec.residual(p + "polar", a.polar);
  rec.residual(p + "polar_commuted", a.polar_commuted);
  rec.residual(p + "anti_multiplicative", a.anti_mult);
  rec.residual(p + "star_involution", a.star_involution);
  rec.residual(p + "tau_lemma", a.lemma);
  rec.residual(p + "square", a.square);
  rec.residual(p + "RA_involutive", a.RA_involutive);
  rec.residual(p + "RA_star", a.RA_star);
  rec.residual(p + "RA_anti_multiplicative", a.RA_anti_mult);
  rec.residual(p + "tau_invariance", a.tau_membership);
  rec.flag(p + "S_well_defined", a.S_inconsistency == 0, 0.0,
           "inconsistent relations " + std::to_string(a.S_inconsistency));
  rec.flag(p + "RA_well_defined", a.RA_inconsistency == 0, 0.0,
           "inconsistent relations " + std::to_string(a.RA_inconsistency));
  if (a.unitary_inverse) rec.residual(p + "unitary_inverse", *a.unitary_inverse);
}

}  // namespace

CheckReport run_suite(const std::string& fixture, const Operator& w, const std::optional<Operator>& q, Level level,
                      const Tolerances& tol, std::uint64_t seed) {
  CheckReport r;
  r.fixture = fixture;
  r.tol = tol;
  r.seed = seed;
  r.level = level;
  Recorder rec(r);
  auto want = [&](Level l) { return static_cast<int>(level) >= static_cast<int>(l); };

  try {
    mpi_leg_dim(w);
  } catch (const SpaceError& e) {
    rec.flag("axioms.shape", false, 0.0, e.what());
    return r;
  }

  // axioms
  const MpiVerdict v = check_mpi_axioms(w, tol);
  rec.residual("axioms.partial_isometry", v.partial_isometry.residual);
  for (int k = 0; k < 4; ++k) rec.residual(std::string("axioms.") + kMpiNames[k], v.mpi[k]);
  rec.residual("axioms.projections", v.projection_residual);
  if (v.pass) {
    const auto d = check_derived_identities(w);
    for (int k = 0; k < 6; ++k) rec.residual(std::string("axioms.") + kDerivedNames[k], d[k]);
  } else {
    rec.skip("axioms.derived", "mpi axioms failed");
  }
  const FullnessVerdict fv = assess_fullness(w, tol);
  rec.info("fullness.literal_right", tf(fv.literal_right), fv.rank_right);
  rec.info("fullness.literal_left", tf(fv.literal_left), fv.rank_left);
  rec.info("fullness.nondeg_A_range", tf(fv.nondeg_A_range));
  rec.info("fullness.nondeg_A_kernel", tf(fv.nondeg_A_kernel));
  rec.info("fullness.nondeg_Ahat_range", tf(fv.nondeg_Ahat_range));
  rec.info("fullness.nondeg_Ahat_kernel", tf(fv.nondeg_Ahat_kernel));
  rec.lap();
  const bool axioms_ok = v.pass;

  if (want(Level::Coalgebra)) {
    if (!axioms_ok) {
      rec.skip("coalgebra", "mpi axioms failed");
    } else {
      record_leg_algebra(rec, "coalgebra.A_", leg_algebra(w, LegSide::A, tol));
      record_leg_algebra(rec, "coalgebra.Ahat_", leg_algebra(w, LegSide::Ahat, tol));
      record_coalgebra(rec, "coalgebra.", coalgebra_report(w, tol));
      record_coalgebra(rec, "coalgebra.hat.", coalgebra_report(dual_operator(w), tol));
    }
    rec.lap();
  }

  std::optional<BaseMaps> maps;
  if (want(Level::Base)) {
    if (!axioms_ok) {
      rec.skip("base", "mpi axioms failed");
    } else {
      const BaseSpans bs = base_spans(w, tol);
      rec.info("base.dims", "N " + std::to_string(bs.N.dim()) + ", L " + std::to_string(bs.L.dim()) + ", Nhat " +
                                std::to_string(bs.Nhat.dim()) + ", Lhat " + std::to_string(bs.Lhat.dim()));
      rec.residual("base.N_L_commute", bs.commutation_residual);
      rec.residual("base.L_equals_Lhat", bs.L_Lhat_residual);
      rec.residual("base.E_in_N_tensor_L", bs.E_in_NL_residual);
      rec.residual("base.star_closed", bs.star_residual);
      rec.residual("base.algebras", bs.algebra_residual);
      const KappaMap km = kappa_map(w, bs.N, tol);
      double kr = 0.0;
      int in = 0;
      for (std::size_t k = 0; k < km.residuals.size(); ++k)
        if (km.in_domain[k]) {
          kr = std::max(kr, km.residuals[k]);
          ++in;
        }
      rec.residual("base.kappa_solve", kr,
                   std::to_string(in) + " of " + std::to_string(km.residuals.size()) + " basis elements in domain");
      rec.info("base.kappa_nullity", std::to_string(km.nullity), km.nullity);
      rec.residual("base.kappa_anti_multiplicative", km.anti_multiplicativity,
                   std::to_string(km.pairs_checked) + " pairs");
      const WeightData nu = find_distinguished_weight(w, BaseSide::N, tol);
      rec.flag("base.nu_found", nu.found, nu.residual,
               "min eigenvalue " + std::to_string(nu.min_eigenvalue) + ", solution space dim " +
                   std::to_string(nu.solution_space_dim));
      const WeightData nuhat = find_distinguished_weight(w, BaseSide::Nhat, tol);
      rec.info("base.hat.nu_found", tf(nuhat.found), nuhat.residual);
      if (!nu.found) {
        rec.skip("base.separability", "no distinguished weight");
        rec.skip("base.c_star_bases", "no distinguished weight");
      } else {
        BaseMaps m = gamma_and_Rtilde(w, bs, nu, tol);
        rec.flag("base.maps", m.valid, 0.0, m.failure);
        if (!m.valid) {
          rec.skip("base.separability", m.failure);
          rec.skip("base.c_star_bases", m.failure);
        } else {
          const SeparabilityResiduals s = check_separability_triple(w, m, std::nullopt, std::nullopt, tol);
          rec.residual("base.mu_normalization", s.mu_normalization);
          rec.residual("base.gamma_L_relation", s.gamma_L_relation);
          rec.residual("base.gamma_N_relation", s.gamma_N_relation);
          rec.residual("base.gamma_N_anti_multiplicative", s.gamma_N_anti_mult);
          rec.residual("base.gamma_N_equals_kappa", s.gamma_N_vs_kappa);
          rec.residual("base.gamma_N_polar", s.polar);
          rec.residual("base.gamma_N_polar_left", s.polar_left);
          rec.residual("base.Rtilde_anti_multiplicative", s.Rtilde_anti_mult);
          rec.residual("base.Rtilde_star", s.Rtilde_star);
          rec.residual("base.mu_consistency", s.mu_consistency);
          rec.residual("base.sigma_mu_intertwine", s.sigma_mu_intertwine);
          rec.residual("base.sigma_invariance", s.sigma_invariance);
          rec.info("base.polar_opposite_sign", "same polar checks with sigma reversed", s.calibration_opposite);
          const CStarBases cb = c_star_bases(w, &m, tol);
          rec.residual("base.B_equals_N", cb.B_equals_N);
          rec.residual("base.C_equals_L", cb.C_equals_L);
          rec.residual("base.multiplier_bx", cb.b_x);
          rec.residual("base.multiplier_xb", cb.x_b);
          rec.residual("base.multiplier_xc", cb.x_c);
          rec.residual("base.multiplier_cx", cb.c_x);
          rec.residual("base.multiplier_xchat", cb.x_chat);
          rec.residual("base.multiplier_ybhat", cb.y_bhat);
          rec.residual("base.multiplier_cy", cb.c_y);
          rec.residual("base.multiplier_chaty", cb.chat_y);
          rec.residual("base.E_multiplier_BC", cb.E_multiplier);
          if (cb.R_onto_C) rec.residual("base.Rtilde_onto_C", *cb.R_onto_C);
          maps = std::move(m);
        }
      }
    }
    rec.lap();
  }

  std::optional<ManageabilityCertificate> cert;
  bool certified = false;
  if (want(Level::Manageability)) {
    if (!axioms_ok) {
      rec.skip("manageability", "mpi axioms failed");
    } else {
      std::vector<Operator> candidates;
      if (q) candidates.push_back(*q);
      else candidates = suggest_q(w, tol);
      std::optional<ManageabilityCertificate> first;
      std::size_t tried = 0;
      std::string error;
      for (const auto& c : candidates) {
        ++tried;
        try {
          ManageabilityCertificate mc = check_manageability(w, c, tol);
          if (!first) first = mc;
          if (mc.passed) {
            cert = std::move(mc);
            break;
          }
        } catch (const std::invalid_argument& e) {
          error = e.what();
        }
      }
      rec.info("manageability.candidates",
               std::string(q ? "supplied" : "suggested") + ": " + std::to_string(tried) + " of " +
                   std::to_string(candidates.size()) + " tried");
      if (!first) {
        rec.flag("manageability.certificate", false, 0.0, error);
      } else {
        const ManageabilityCertificate& c = cert ? *cert : *first;
        record_certificate(rec, "manageability.", w, c);
        rec.flag("manageability.certificate", c.passed);
        if (cert) {
          const HashIdentities h = check_hash_identities(w, cert->Q, cert->Wtilde);
          rec.residual("manageability.hash_1", h.first);
          rec.residual("manageability.hash_2", h.second);
          rec.residual("manageability.hash_3", h.third);
          rec.residual("manageability.slice_transpose_lemma", h.slice_lemma);
          const DualManageability d = dual_manageability(w, cert->Q, cert->Wtilde, tol);
          rec.residual("manageability.dual_candidate", d.candidate_gap);
          rec.flag("manageability.dual_certificate", d.certificate.passed);
          if (maps) {
            const SeparabilityResiduals s = check_separability_triple(w, *maps, cert->Q.m, cert->Wtilde.m, tol);
            rec.residual("base.Rkappa_anti_multiplicative", *s.Rkappa_anti_mult);
            rec.residual("base.Rkappa_star", *s.Rkappa_star);
            rec.residual("base.kappa_T_Rkappa", *s.kappa_T_Rkappa);
            rec.residual("base.kappa_Rkappa_T", *s.kappa_Rkappa_T);
            rec.residual("base.Rkappa_Wtilde", *s.Rkappa_wtilde);
          }
          certified = fv.nondegenerate();
        }
      }
      rec.info("manageability.certified", certified ? "true" : "false: needs a passed certificate and nondegenerate fullness");
    }
    rec.lap();
  }

  if (want(Level::Antipode)) {
    if (!certified) {
      rec.skip("antipode", "no certified Q");
      rec.skip("duality", "no certified Q");
      rec.skip("base_restrictions", "no certified Q");
    } else {
      record_antipode(rec, "antipode.", check_antipode(w, cert->Q, cert->Wtilde, tol));
      const DualityResiduals d = check_duality(w, cert->Q, cert->Wtilde, tol);
      record_antipode(rec, "duality.hat_", d.dual);
      rec.residual("duality.Shat_inverse", d.Shat_inverse);
      rec.residual("duality.Rhat_formula", d.Rhat_formula);
      rec.residual("duality.decomposition", d.decomposition);
      rec.residual("duality.transpose_Rhat", d.transpose_R);
      rec.residual("duality.Wtilde_partial_isometry", d.wtilde_partial_isometry);
      const double dd = double_dual_gap(w);
      rec.flag("duality.double_dual", dd == 0.0, dd);
      if (maps) {
        const BaseRestrictionResiduals b = check_base_restrictions(w, cert->Q, *maps, tol);
        rec.residual("base_restrictions.tau_B", b.tau_B);
        rec.residual("base_restrictions.tau_C", b.tau_C);
        rec.residual("base_restrictions.B_in_A", b.B_in_A);
        rec.residual("base_restrictions.C_in_A", b.C_in_A);
        rec.residual("base_restrictions.S_B", b.S_B);
        rec.residual("base_restrictions.S_C", b.S_C);
      } else {
        rec.skip("base_restrictions", "no base maps");
      }
    }
    rec.lap();
  }
  return r;
}

json to_json(const CheckReport& r, bool timing) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"id", c.id}, {"status", status_name(c.status)}, {"residual", c.residual}};
    if (!c.note.empty()) e["note"] = c.note;
    if (timing) e["seconds"] = c.seconds;
    checks.push_back(std::move(e));
  }
  return {{"fixture", r.fixture},
          {"version", r.version},
          {"level", level_name(r.level)},
          {"seed", r.seed},
          {"tolerance",
           {{"residual", r.tol.residual}, {"rank", r.tol.rank}, {"pd", r.tol.pd}, {"membership", r.tol.membership}}},
          {"verdict", r.verdict() ? "pass" : "fail"},
          {"checks", std::move(checks)}};
}

std::string to_text(const CheckReport& r, bool timing) {
  std::ostringstream os;
  os << r.fixture << "  level " << level_name(r.level) << "  tol " << r.tol.residual << "  verdict "
     << (r.verdict() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) {
    std::string st = status_name(c.status);
    for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "  " << std::left << std::setw(5) << st << std::setw(42) << c.id << std::right << std::scientific
       << std::setprecision(2) << std::setw(10) << c.residual;
    if (timing) os << std::fixed << std::setprecision(4) << std::setw(9) << c.seconds << "s";
    if (!c.note.empty()) os << "  " << c.note;
    os << std::defaultfloat << "\n";
  }
  return os.str();
}

namespace {

Flavor parse_flavor(const json& f) {
  if (!f.is_string()) throw InputError("flavor must be a string");
  const auto s = f.get<std::string>();
  if (s == "H") return Flavor::H;
  if (s == "Hbar") return Flavor::Hbar;
  throw InputError("unknown flavor '" + s + "'");
}

cplx parse_entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw InputError("matrix entry must be [re, im], got " + e.dump());
  const cplx z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("non-finite matrix entry");
  return z;
}

}  // namespace

Operator operator_from_json(const json& j) {
  if (!j.is_object()) throw InputError("operator file must hold a JSON object");
  for (const char* k : {"dims", "flavors", "matrix"})
    if (!j.contains(k)) throw InputError(std::string("missing field '") + k + "'");
  const json& dims = j["dims"];
  const json& fl = j["flavors"];
  if (!dims.is_array() || !fl.is_array() || dims.size() != fl.size() || dims.empty())
    throw InputError("dims and flavors must be arrays of the same nonzero length");
  std::vector<LegSpec> legs;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!dims[k].is_number_integer() || dims[k].get<long long>() < 1 || dims[k].get<long long>() > 4096)
      throw InputError("leg dimension must be a positive integer");
    legs.push_back({dims[k].get<int>(), parse_flavor(fl[k])});
  }
  const TensorSpace space(legs);
  const int d = space.total_dim();
  const json& m = j["matrix"];
  if (!m.is_array()) throw InputError("matrix must be an array");
  Mat out(d, d);
  // rows of [re, im] pairs, or one flat row-major list
  const bool flat = !m.empty() && m[0].is_array() && m[0].size() == 2 && m[0][0].is_number();
  if (flat) {
    if (m.size() != static_cast<std::size_t>(d) * d)
      throw InputError("dimension mismatch: " + std::to_string(m.size()) + " entries for side " + std::to_string(d));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) out(r, c) = parse_entry(m[r * d + c]);
  } else {
    if (m.size() != static_cast<std::size_t>(d))
      throw InputError("dimension mismatch: " + std::to_string(m.size()) + " rows for side " + std::to_string(d));
    for (int r = 0; r < d; ++r) {
      if (!m[r].is_array() || m[r].size() != static_cast<std::size_t>(d))
        throw InputError("dimension mismatch in row " + std::to_string(r));
      for (int c = 0; c < d; ++c) out(r, c) = parse_entry(m[r][c]);
    }
  }
  return Operator(space, out);
}

json operator_to_json(const Operator& op) {
  json dims = json::array(), fl = json::array(), rows = json::array();
  for (const auto& l : op.space.legs) {
    dims.push_back(l.dim);
    fl.push_back(flavor_name(l.flavor));
  }
  for (Eigen::Index r = 0; r < op.m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < op.m.cols(); ++c) row.push_back({op.m(r, c).real(), op.m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dims", dims}, {"flavors", fl}, {"matrix", rows}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Operator load_operator(const std::string& path) {
  try {
    return operator_from_json(read_json_file(path));
  } catch (const SpaceError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_operator(const Operator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << operator_to_json(op).dump() << "\n";
}

GroupTable group_table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("table") || !j["table"].is_array()) throw InputError("expected {\"table\": [[...]]}");
  GroupTable t;
  try {
    t = j["table"].get<GroupTable>();
    validate_group_table(t);
  } catch (const json::exception& e) {
    throw InputError(std::string("group table: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return t;
}

GroupoidSpec groupoid_from_json(const json& j) {
  GroupoidSpec g;
  try {
    g.units = j.at("units").get<std::vector<int>>();
    for (const auto& a : j.at("arrows"))
      g.arrows.push_back({a.at("id").get<int>(), a.at("source").get<int>(), a.at("target").get<int>()});
    for (const auto& c : j.at("compose")) {
      const auto v = c.get<std::vector<int>>();
      if (v.size() != 3) throw InputError("compose entries are [g, h, gh]");
      g.compose[{v[0], v[1]}] = v[2];
    }
    for (const auto& c : j.at("inverse")) {
      const auto v = c.get<std::vector<int>>();
      if (v.size() != 2) throw InputError("inverse entries are [g, g^-1]");
      g.inverse[v[0]] = v[1];
    }
    g.validate();
  } catch (const json::exception& e) {
    throw InputError(std::string("groupoid spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("groupoid spec: ") + e.what());
  }
  return g;
}

}  // namespace mpilab
