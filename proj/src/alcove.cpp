#include "tmt/alcove.hpp"

#include "tmt/betti.hpp"
#include "tmt/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace tmt::alcove {

namespace {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Row-reduce [A | b] in place; returns indices of pivot rows of the original
// matrix, or nullopt when the system is inconsistent.
std::optional<std::vector<int>> independent_rows(Mat a, Vec b, std::vector<int>* pivots_out) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (a[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[row], a[p]);
    std::swap(b[row], b[p]);
    std::swap(order[row], order[p]);
    for (int i = row + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (int j = col; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivots.push_back(order[row]);
    ++row;
  }
  for (int i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  *pivots_out = pivots;
  return pivots;
}

// Solve the square system M y = v by exact Gaussian elimination.  M must be
// invertible (it is a Gram matrix of independent rows wherever we call this).
Vec solve_square(Mat m, Vec v) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (m[i][col] != 0) { p = i; break; }
    if (p < 0) fail(errc::shape_error, "singular system");
    std::swap(m[col], m[p]);
    std::swap(v[col], v[p]);
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rational f = m[i][col] / m[col][col];
      for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      v[i] -= f * v[col];
    }
  }
  Vec y(n);
  for (int i = 0; i < n; ++i) y[i] = v[i] / m[i][i];
  return y;
}

// Orthogonal projection of p onto the affine subspace {x : A x = b}; nullopt
// when the constraints are inconsistent.
std::optional<Vec> project_affine(const Mat& a, const Vec& b, const Vec& p) {
  if (a.empty()) return p;
  std::vector<int> pivots;
  if (!independent_rows(a, b, &pivots)) return std::nullopt;
  Mat ai;
  Vec bi;
  for (int r : pivots) {
    ai.push_back(a[r]);
    bi.push_back(b[r]);
  }
  const int m = static_cast<int>(ai.size());
  Mat gram(m, Vec(m));
  Vec rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram[i][j] = dot(ai[i], ai[j]);
    rhs[i] = dot(ai[i], p) - bi[i];
  }
  Vec y = solve_square(gram, rhs);
  Vec x = p;
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < x.size(); ++j) x[j] -= y[i] * ai[i][j];
  return x;
}

bool in_closed_alcove(const Vec& x) {
  Rational sum = 0;
  for (const auto& v : x) sum += v;
  if (sum != 0) return false;
  for (size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] < x[i + 1]) return false;
  return x.front() - x.back() <= 1;
}

}  // namespace

Label::Label(int rank, std::vector<Rational> entries) : rank_(rank), entries_(std::move(entries)) {
  if (rank_ < 2) fail(errc::invalid_rank, "rank must be at least 2");
  if (static_cast<int>(entries_.size()) != rank_)
    fail(errc::bad_label, "label needs exactly rank entries");
  std::sort(entries_.begin(), entries_.end(), std::greater<>());
  Rational sum = 0;
  for (const auto& e : entries_) sum += e;
  if (sum != 0) fail(errc::bad_label, "label entries must sum to zero");
  if (entries_.front() - entries_.back() > 1)
    fail(errc::bad_label, "label spread exceeds 1");
}

bool Label::operator<(const Label& o) const {
  if (rank_ != o.rank_) return rank_ < o.rank_;
  return entries_ < o.entries_;
}

bool Label::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& e) { return e == 0; });
}

std::string Label::str() const {
  if (is_zero()) return "0";
  if (auto k = half_vertex_index(*this); k && *k > 0) return "w" + std::to_string(*k) + "/2";
  std::string out = "(";
  for (int i = 0; i < rank_; ++i) {
    if (i) out += ",";
    out += to_string(entries_[i]);
  }
  return out + ")";
}

Label vertex(int r, int k) {
  if (r < 2) fail(errc::invalid_rank, "rank must be at least 2");
  if (k < 0 || k > r - 1) fail(errc::invalid_index, "vertex index out of range");
  std::vector<Rational> e(r);
  for (int i = 0; i < k; ++i) e[i] = Rational(r - k, r);
  for (int i = k; i < r; ++i) e[i] = Rational(-k, r);
  return Label(r, std::move(e));
}

Label half_vertex(int r, int k) {
  Label v = vertex(r, k);
  std::vector<Rational> e = v.entries();
  for (auto& x : e) x /= 2;
  return Label(r, std::move(e));
}

Label barycenter(int r) {
  if (r < 2) fail(errc::invalid_rank, "rank must be at least 2");
  std::vector<Rational> e(r);
  for (int i = 0; i < r; ++i) e[i] = Rational(r - 1 - 2 * i, 2 * r);
  return Label(r, std::move(e));
}

Label involution(const Label& l) {
  std::vector<Rational> e(l.rank());
  for (int i = 0; i < l.rank(); ++i) e[i] = -l.entry(l.rank() - 1 - i);
  return Label(l.rank(), std::move(e));
}

std::optional<int> half_vertex_index(const Label& l) {
  for (int k = 0; k < l.rank(); ++k)
    if (l == half_vertex(l.rank(), k)) return k;
  return std::nullopt;
}

std::vector<Label> monotone_labels(int r) {
  if (r < 2) fail(errc::invalid_rank, "rank must be at least 2");
  // Alcove walls, as hyperplanes inside the sum-zero subspace:
  //   lambda_i = lambda_{i+1} (i = 1..r-1)  and  lambda_1 - lambda_r = 1.
  Mat walls;
  Vec rhs_all;
  for (int i = 0; i + 1 < r; ++i) {
    Vec row(r, Rational(0));
    row[i] = 1;
    row[i + 1] = -1;
    walls.push_back(row);
    rhs_all.push_back(0);
  }
  {
    Vec row(r, Rational(0));
    row[0] = 1;
    row[r - 1] = -1;
    walls.push_back(row);
    rhs_all.push_back(1);
  }
  Vec center = barycenter(r).entries();
  std::set<Label> out;
  const int nwalls = static_cast<int>(walls.size());
  for (unsigned mask = 0; mask < (1u << nwalls); ++mask) {
    Mat a;
    Vec b;
    for (int i = 0; i < nwalls; ++i)
      if (mask & (1u << i)) {
        a.push_back(walls[i]);
        b.push_back(rhs_all[i]);
      }
    auto proj = project_affine(a, b, center);
    if (!proj || !in_closed_alcove(*proj)) continue;
    out.insert(Label(r, *proj));
  }
  return {out.begin(), out.end()};
}

bool is_monotone(const Label& l) {
  auto set = monotone_labels(l.rank());
  return std::find(set.begin(), set.end(), l) != set.end();
}

namespace {

// Is v an integer combination of the coroots e_i - e_{i+1}?  The coroot span is
// exactly the integer sum-zero vectors; the coefficients are the partial sums
// (forward Gaussian elimination of the bidiagonal coroot matrix).
bool in_coroot_lattice(const Vec& v) {
  Rational partial = 0;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    partial += v[i];
    if (!is_integer(partial)) return false;
  }
  return true;
}

}  // namespace

AdmissibilityReport is_admissible(const std::vector<Label>& labels, int r) {
  AdmissibilityReport rep;
  for (const auto& l : labels)
    if (l.rank() != r) fail(errc::rank_mismatch, "mixed ranks in label list");
  for (const auto& l : labels)
    if (!half_vertex_index(l)) {
      rep.reason = "label " + l.str() + " is not half of a vertex";
      return rep;
    }
  Vec sum(r, Rational(0));
  for (const auto& l : labels)
    for (int i = 0; i < r; ++i) sum[i] += 2 * l.entry(i);
  for (int d = 0; d < r; ++d) {
    Vec diff = sum;
    Label wd = vertex(r, d);
    for (int i = 0; i < r; ++i) diff[i] -= wd.entry(i);
    if (!in_coroot_lattice(diff)) continue;
    if (std::gcd(d, r) != 1) {
      rep.d = d;
      rep.reason = "doubled label sum reduces to omega_" + std::to_string(d) +
                   ", not coprime to " + std::to_string(r);
      return rep;
    }
    rep.ok = true;
    rep.d = d;
    return rep;
  }
  rep.reason = "doubled label sum does not reduce to any vertex mod the coroot lattice";
  return rep;
}

bool wall_check_bruteforce(const std::vector<Label>& labels, int r, int n_cap) {
  if (r > 4) fail(errc::too_large, "brute-force wall check limited to r <= 4");
  if (static_cast<int>(labels.size()) > n_cap)
    fail(errc::too_large, "brute-force wall check limited to " + std::to_string(n_cap) + " labels");
  for (const auto& l : labels)
    if (l.rank() != r) fail(errc::rank_mismatch, "mixed ranks in label list");
  const int n = static_cast<int>(labels.size());
  // Distinct Weyl images of each label (permutations of its entries).
  std::vector<std::vector<Vec>> orbits(n);
  for (int i = 0; i < n; ++i) {
    Vec e = labels[i].entries();
    std::sort(e.begin(), e.end());
    do {
      orbits[i].push_back(e);
    } while (std::next_permutation(e.begin(), e.end()));
  }
  std::vector<Vec> omegas;
  for (int j = 1; j < r; ++j) omegas.push_back(vertex(r, j).entries());
  std::vector<size_t> idx(n, 0);
  while (true) {
    Vec sum(r, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < r; ++k) sum[k] += orbits[i][idx[i]][k];
    for (const auto& w : omegas)
      if (is_integer(dot(sum, w))) return false;  // pairing lies in <Lambda, omega_j> = Z
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < orbits[pos].size()) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return true;
}

ClassInfo conj_class_info(const Label& l) {
  ClassInfo info;
  int run = 1;
  for (int i = 1; i <= l.rank(); ++i) {
    if (i < l.rank() && l.entry(i) == l.entry(i - 1)) {
      ++run;
    } else {
      info.multiplicities.push_back(run);
      run = 1;
    }
  }
  info.real_dimension = l.rank() * l.rank();
  for (int m : info.multiplicities) info.real_dimension -= m * m;
  info.poincare = betti::flag_poincare(info.multiplicities);
  return info;
}

Label parse_label(const std::string& text, int r) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(errc::bad_label, "empty label");
  if (s == "0") return vertex(r, 0);
  if (s[0] == 'w') {
    auto slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash) != "/2")
      fail(errc::bad_label, "half-vertex label must look like wK/2: '" + text + "'");
    int k;
    try {
      k = std::stoi(s.substr(1, slash - 1));
    } catch (const std::exception&) {
      fail(errc::bad_label, "bad vertex index in '" + text + "'");
    }
    if (k < 0 || k > r - 1) fail(errc::invalid_index, "vertex index out of range in '" + text + "'");
    return half_vertex(r, k);
  }
  if (s[0] == '(') {
    if (s.back() != ')') fail(errc::bad_label, "unterminated vector label: '" + text + "'");
    std::vector<Rational> entries;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) entries.push_back(parse_rational(tok));
    if (static_cast<int>(entries.size()) != r)
      fail(errc::bad_label, "vector label has wrong length for SU(" + std::to_string(r) + ")");
    return Label(r, std::move(entries));
  }
  // SU(2) interval alias: a single rational mu stands for (mu, -mu).
  if (r != 2) fail(errc::bad_label, "interval alias only valid for SU(2): '" + text + "'");
  Rational mu = parse_rational(s);
  return Label(2, {mu, -mu});
}

}  // namespace tmt::alcove
