#pragma once

#include "mpilab/corpus.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mpilab {

inline constexpr const char* kVersion = "0.1.0";

enum class Level { Axioms, Coalgebra, Base, Manageability, Antipode, All };

std::optional<Level> parse_level(const std::string& s);
const char* level_name(Level l);

enum class Status { Pass, Fail, Skip, Info };
const char* status_name(Status s);

struct CheckEntry {
  std::string id;
  Status status = Status::Pass;
  double residual = 0.0;  // nonnegative, finite; 0 for skips
  std::string note;       // skip reason or informational value
  double seconds = 0.0;   // wall time of the computation that produced the entry
  bool pass() const { return status != Status::Fail; }
};

struct CheckReport {
  std::string fixture;
  Tolerances tol;
  std::uint64_t seed = 0;
  Level level = Level::All;
  std::vector<CheckEntry> checks;
  std::string version = kVersion;

  bool verdict() const;
  const CheckEntry* find(const std::string& id) const;
};

// Modules run in the order axioms, coalgebra, base, manageability, antipode.
// Coalgebra, base and manageability need the axioms; the antipode level needs
// a certified pair: certificate passed and all four nondegenerate fullness flags.
// Without q, the suggest_q candidates are tried in order.
CheckReport run_suite(const std::string& fixture, const Operator& w, const std::optional<Operator>& q, Level level,
                      const Tolerances& tol = {}, std::uint64_t seed = 0);

// Wall times are left out unless asked for; the rest is byte-stable.
nlohmann::json to_json(const CheckReport& r, bool timing = false);
std::string to_text(const CheckReport& r, bool timing = false);

// Input errors (malformed file, shape mismatch, non-finite entries).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"dims":[n,n],"flavors":["H","H"],"matrix":[[[re,im],...],...]}, row-major
Operator operator_from_json(const nlohmann::json& j);
nlohmann::json operator_to_json(const Operator& op);
Operator load_operator(const std::string& path);
void save_operator(const Operator& op, const std::string& path);

// {"table":[[...],...]}
GroupTable group_table_from_json(const nlohmann::json& j);
// {"units":[..],"arrows":[{"id":..,"source":..,"target":..}],"compose":[[g,h,gh],..],"inverse":[[g,g^-1],..]}
GroupoidSpec groupoid_from_json(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace mpilab
