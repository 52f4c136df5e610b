#include "mpilab/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mpilab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("groupoid: " + what);
}

}  // namespace

int GroupoidSpec::index_of(int id) const {
  for (int k = 0; k < size(); ++k)
    if (arrows[k].id == id) return k;
  throw std::invalid_argument("groupoid: unknown arrow id " + std::to_string(id));
}

void GroupoidSpec::validate() const {
  require(!arrows.empty(), "no arrows");
  std::map<int, Arrow> by_id;
  for (const auto& a : arrows) require(by_id.emplace(a.id, a).second, "duplicate arrow id " + std::to_string(a.id));
  const std::set<int> unit_set(units.begin(), units.end());
  require(unit_set.size() == units.size(), "duplicate unit");
  for (int u : units) {
    require(by_id.count(u) != 0, "unit " + std::to_string(u) + " is not an arrow");
    require(by_id[u].source == u && by_id[u].target == u, "unit " + std::to_string(u) + " is not a loop at itself");
  }
  for (const auto& a : arrows)
    require(unit_set.count(a.source) && unit_set.count(a.target), "arrow " + std::to_string(a.id) + " has a non-unit end");

  auto comp = [&](int g, int h) {
    auto it = compose.find({g, h});
    require(it != compose.end(), "missing composite " + std::to_string(g) + "*" + std::to_string(h));
    return it->second;
  };
  for (const auto& [gh, k] : compose) {
    require(by_id.count(gh.first) && by_id.count(gh.second) && by_id.count(k), "composition mentions unknown arrow");
    const auto& g = by_id[gh.first];
    const auto& h = by_id[gh.second];
    require(g.source == h.target, "composite defined for a non-composable pair");
    require(by_id[k].target == g.target && by_id[k].source == h.source, "composite has wrong ends");
  }
  for (const auto& g : arrows)
    for (const auto& h : arrows)
      if (g.source == h.target) comp(g.id, h.id);
  for (const auto& g : arrows) {
    require(comp(g.target, g.id) == g.id && comp(g.id, g.source) == g.id, "units are not identities");
    auto it = inverse.find(g.id);
    require(it != inverse.end() && by_id.count(it->second), "missing inverse of " + std::to_string(g.id));
    require(comp(g.id, it->second) == g.target && comp(it->second, g.id) == g.source, "inverse axiom fails");
  }
  for (const auto& f : arrows)
    for (const auto& g : arrows)
      for (const auto& h : arrows)
        if (f.source == g.target && g.source == h.target)
          require(comp(comp(f.id, g.id), h.id) == comp(f.id, comp(g.id, h.id)), "composition is not associative");
}

Operator matrix_unit_example() {
  const Operator e21 = single_leg(matrix_unit(2, 1, 0));
  const Operator e11 = single_leg(matrix_unit(2, 0, 0));
  const Operator e22 = single_leg(matrix_unit(2, 1, 1));
  return kron(e21, e11) + kron(e22, e22);
}

void validate_group_table(const GroupTable& t) {
  const int k = static_cast<int>(t.size());
  if (k == 0) throw std::invalid_argument("group table: empty");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != k) throw std::invalid_argument("group table: not square");
    for (int v : row)
      if (v < 0 || v >= k) throw std::invalid_argument("group table: entry out of range");
  }
  int e = -1;
  for (int g = 0; g < k && e < 0; ++g) {
    bool unit = true;
    for (int h = 0; h < k; ++h) unit = unit && t[g][h] == h && t[h][g] == h;
    if (unit) e = g;
  }
  if (e < 0) throw std::invalid_argument("group table: no identity");
  for (int g = 0; g < k; ++g) {
    bool inv = false;
    for (int h = 0; h < k; ++h) inv = inv || (t[g][h] == e && t[h][g] == e);
    if (!inv) throw std::invalid_argument("group table: element " + std::to_string(g) + " has no inverse");
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) throw std::invalid_argument("group table: not associative");
}

Operator group_mpu(const GroupTable& table) {
  validate_group_table(table);
  const int k = static_cast<int>(table.size());
  Mat w = Mat::Zero(k * k, k * k);
  for (int g = 0; g < k; ++g)
    for (int h = 0; h < k; ++h) w(g * k + table[g][h], g * k + h) = 1.0;
  return two_leg(w);
}

Operator groupoid_mpi(const GroupoidSpec& gs) {
  gs.validate();
  const int n = gs.size();
  Mat w = Mat::Zero(n * n, n * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const auto& a = gs.arrows[g];
      const auto& b = gs.arrows[h];
      if (a.source != b.target) continue;
      w(g * n + gs.index_of(gs.compose.at({a.id, b.id})), g * n + h) = 1.0;
    }
  Operator W = two_leg(w);
  const auto v = check_mpi_axioms(W);
  if (!v.pass) throw std::logic_error("groupoid_mpi: generated operator violates the axioms");
  return W;
}

Operator conjugate_fixture(const Operator& w, const Mat& u, double tol) {
  const int n = mpi_leg_dim(w);
  if (u.rows() != n || u.cols() != n) throw SpaceError("conjugate_fixture: unitary has the wrong size");
  if ((u * u.adjoint() - Mat::Identity(n, n)).norm() > tol) throw std::invalid_argument("conjugate_fixture: not unitary");
  const Operator uu = kron(single_leg(u), single_leg(u));
  return uu * w * uu.adjoint();
}

GroupTable cyclic_group(int k) {
  GroupTable t(k, std::vector<int>(k));
  for (int g = 0; g < k; ++g)
    for (int h = 0; h < k; ++h) t[g][h] = (g + h) % k;
  return t;
}

GroupoidSpec group_as_groupoid(const GroupTable& table) {
  validate_group_table(table);
  const int k = static_cast<int>(table.size());
  int e = 0;
  while (table[e][0] != 0) ++e;
  GroupoidSpec s;
  s.units = {e};
  for (int g = 0; g < k; ++g) s.arrows.push_back({g, e, e});
  for (int g = 0; g < k; ++g)
    for (int h = 0; h < k; ++h) {
      s.compose[{g, h}] = table[g][h];
      if (table[g][h] == e) s.inverse[g] = h;
    }
  return s;
}

GroupTable symmetric_group(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("symmetric_group: k must be in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  GroupTable t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      // (gh)(x) = g(h(x))
      std::vector<int> gh(static_cast<std::size_t>(k));
      for (int x = 0; x < k; ++x) gh[x] = perms[g][perms[h][x]];
      t[g][h] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), gh) - perms.begin());
    }
  return t;
}

GroupoidSpec pair_groupoid(int units) {
  // arrow (i, j) goes from j to i and has id i*units + j
  GroupoidSpec s;
  for (int i = 0; i < units; ++i) s.units.push_back(i * units + i);
  for (int i = 0; i < units; ++i)
    for (int j = 0; j < units; ++j) {
      s.arrows.push_back({i * units + j, j * units + j, i * units + i});
      s.inverse[i * units + j] = j * units + i;
      for (int l = 0; l < units; ++l) s.compose[{i * units + j, j * units + l}] = i * units + l;
    }
  return s;
}

GroupoidSpec disjoint_union(const GroupoidSpec& a, const GroupoidSpec& b) {
  int shift = 0;
  for (const auto& x : a.arrows) shift = std::max(shift, x.id + 1);
  GroupoidSpec s = a;
  for (int u : b.units) s.units.push_back(u + shift);
  for (const auto& x : b.arrows) s.arrows.push_back({x.id + shift, x.source + shift, x.target + shift});
  for (const auto& [gh, k] : b.compose) s.compose[{gh.first + shift, gh.second + shift}] = k + shift;
  for (const auto& [g, h] : b.inverse) s.inverse[g + shift] = h + shift;
  return s;
}

Mat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix column phases so the law does not depend on the QR sign convention
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Mat permutation_unitary(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Mat p = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
  return p;
}

std::vector<Fixture> standard_corpus() {
  std::vector<Fixture> c;
  c.push_back({"example", matrix_unit_example(), std::nullopt, false});
  for (int k : {2, 3, 4}) c.push_back({"Z" + std::to_string(k), group_mpu(cyclic_group(k)), 1, true});
  c.push_back({"S3", group_mpu(symmetric_group(3)), 1, true});
  c.push_back({"pair2", groupoid_mpi(pair_groupoid(2)), 2, true});
  const auto z2 = group_as_groupoid(cyclic_group(2));
  c.push_back({"Z2+Z2", groupoid_mpi(disjoint_union(z2, z2)), 2, true});
  c.push_back({"pair2+pair2", groupoid_mpi(disjoint_union(pair_groupoid(2), pair_groupoid(2))), 4, true});
  c.push_back({"pair2+Z3", groupoid_mpi(disjoint_union(pair_groupoid(2), group_as_groupoid(cyclic_group(3)))), 3, true});
  return c;
}

std::vector<Fixture> conjugated_corpus(std::uint64_t seed, int count, int max_n) {
  std::vector<Fixture> base;
  for (auto& f : standard_corpus())
    if (f.w.space.legs[0].dim <= max_n) base.push_back(std::move(f));
  std::mt19937_64 rng(seed);
  std::vector<Fixture> out;
  for (int t = 0; t < count; ++t) {
    const Fixture& f = base[t % base.size()];
    const Mat u = random_unitary(f.w.space.legs[0].dim, rng);
    out.push_back({f.id + "@U" + std::to_string(t), conjugate_fixture(f.w, u), f.unit_count, f.groupoid_family});
  }
  return out;
}

}  // namespace mpilab
