#include "presred/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <sstream>
#include <thread>

namespace presred {

namespace {
std::atomic<int> g_max_threads{2};
}

void set_max_threads(int n) { g_max_threads = n < 1 ? 1 : n; }
int max_threads() { return g_max_threads; }

bool HPolytope::contains(const std::vector<Rat>& x) const {
  for (const auto& r : rows) {
    Rat lhs = 0;
    for (int i = 0; i < dim; ++i) lhs += Rat(r.coeffs[i]) * x[i];
    if (lhs > Rat(r.bound)) return false;
  }
  return true;
}

bool HPolytope::contains_int(const std::vector<Int>& x) const {
  for (const auto& r : rows) {
    Int lhs = 0;
    for (int i = 0; i < dim; ++i) lhs += r.coeffs[i] * x[i];
    if (lhs > r.bound) return false;
  }
  return true;
}

Int mcmullen_f(int d, const Int& n) {
  if (d < 1 || n <= d) throw std::invalid_argument("mcmullen_f: need n >= d + 1");
  Int nd = n - d;
  return binomial(n - (d + 1) / 2, nd) + binomial(n - d / 2 - 1, nd);
}

// ---------------------------------------------------------------------------
// vertices_of: rational basic solutions of row subsets
// ---------------------------------------------------------------------------

namespace {

// Solves the square system rows[i] . x = rhs[i]; returns false if singular.
bool solve_square(const std::vector<std::vector<Rat>>& m, const std::vector<Rat>& rhs,
                  std::vector<Rat>& out) {
  const std::size_t d = rhs.size();
  std::vector<std::vector<Rat>> a(m);
  std::vector<Rat> b(rhs);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    while (piv < d && a[piv][k] == 0) ++piv;
    if (piv == d) return false;
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    for (std::size_t r = k + 1; r < d; ++r) {
      if (a[r][k] == 0) continue;
      Rat f = a[r][k] / a[k][k];
      for (std::size_t c = k; c < d; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  out.assign(d, Rat(0));
  for (std::size_t k = d; k-- > 0;) {
    Rat s = b[k];
    for (std::size_t c = k + 1; c < d; ++c) s -= a[k][c] * out[c];
    out[k] = s / a[k][k];
  }
  return true;
}

// Rank of a rational matrix.
int rat_rank(std::vector<std::vector<Rat>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  std::size_t rr = 0;
  for (std::size_t c = 0; c < cols && rr < rows; ++c) {
    std::size_t piv = rr;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rr]);
    for (std::size_t r = rr + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rr][cc];
    }
    ++rr;
    ++rank;
  }
  return rank;
}

// One-dimensional kernel direction of a (d-1) x d rational matrix, if the
// rank is exactly d-1; integer-scaled.
bool kernel_direction(const std::vector<std::vector<Rat>>& m, int dim, std::vector<Int>& out) {
  std::vector<std::vector<Rat>> a(m);
  std::vector<int> pivot_col;
  std::size_t rr = 0;
  for (int c = 0; c < dim && rr < a.size(); ++c) {
    std::size_t piv = rr;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rr]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rr || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[rr][c];
      for (int cc = 0; cc < dim; ++cc) a[r][cc] -= f * a[rr][cc];
    }
    pivot_col.push_back(c);
    ++rr;
  }
  if (static_cast<int>(rr) != dim - 1) return false;
  // Free column: the one that is not a pivot.
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<Rat> x(dim, Rat(0));
  x[free_col] = 1;
  for (std::size_t r = 0; r < rr; ++r) {
    x[pivot_col[r]] = -a[r][free_col] / a[r][pivot_col[r]];
  }
  Int lcm = 1;
  for (const auto& v : x) lcm = lcm / int_gcd(lcm, rat_den(v)) * rat_den(v);
  out.assign(dim, 0);
  Int g = 0;
  for (int c = 0; c < dim; ++c) {
    out[c] = rat_num(x[c]) * (lcm / rat_den(x[c]));
    g = int_gcd(g, boost::multiprecision::abs(out[c]));
  }
  for (auto& v : out) v /= g;
  return true;
}

void next_combination_done(std::vector<int>& idx, int n, bool& done) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) {
    done = true;
    return;
  }
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
}

}  // namespace

VPolytope vertices_of(const HPolytope& h) {
  const int d = h.dim;
  if (d < 1) throw std::invalid_argument("vertices_of: dimension must be >= 1");
  const int nrows = static_cast<int>(h.rows.size());
  if (nrows < d) throw std::invalid_argument("vertices_of: fewer rows than dimensions");
  if (binomial(nrows, d) > 2'000'000) throw ScaleError("vertices_of: too many row subsets");

  std::vector<std::vector<Rat>> all(nrows, std::vector<Rat>(d));
  for (int r = 0; r < nrows; ++r) {
    for (int c = 0; c < d; ++c) all[r][c] = Rat(h.rows[r].coeffs[c]);
  }

  std::vector<std::vector<Rat>> verts;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    std::vector<std::vector<Rat>> m;
    std::vector<Rat> rhs;
    for (int i : idx) {
      m.push_back(all[i]);
      rhs.emplace_back(h.rows[i].bound);
    }
    std::vector<Rat> x;
    if (solve_square(m, rhs, x) && h.contains(x)) verts.push_back(std::move(x));
    next_combination_done(idx, nrows, done);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  if (!verts.empty()) {
    // Boundedness: a free direction r with every row coefficient a.r <= 0
    // certifies an unbounded polyhedron.  A nontrivial lineality space shows
    // up as rank deficiency; pointed recession rays show up on (d-1)-subsets.
    if (rat_rank(all) < d) {
      throw std::invalid_argument("vertices_of: unbounded input (nontrivial lineality space)");
    }
    if (d >= 2) {
      std::vector<int> ridx(d - 1);
      for (int i = 0; i < d - 1; ++i) ridx[i] = i;
      bool rdone = false;
      while (!rdone) {
        std::vector<std::vector<Rat>> m;
        for (int i : ridx) m.push_back(all[i]);
        std::vector<Int> dir;
        if (kernel_direction(m, d, dir)) {
          for (int sgn = 0; sgn < 2; ++sgn) {
            bool ray = true;
            for (const auto& row : h.rows) {
              Int s = 0;
              for (int c = 0; c < d; ++c) s += row.coeffs[c] * dir[c];
              if (s > 0) { ray = false; break; }
            }
            if (ray) {
              std::string msg = "vertices_of: unbounded input, ray (";
              for (int c = 0; c < d; ++c) msg += (c ? "," : "") + dir[c].str();
              throw std::invalid_argument(msg + ")");
            }
            for (auto& v : dir) v = -v;
          }
        }
        next_combination_done(ridx, nrows, rdone);
      }
    }
  }
  VPolytope out;
  out.dim = d;
  out.vertices = std::move(verts);
  return out;
}

// ---------------------------------------------------------------------------
// facets_of: supporting hyperplanes through vertex subsets
// ---------------------------------------------------------------------------

namespace {

using boost::multiprecision::int512_t;

// Kernel vector of the d x (d+1) matrix rows; returns false if rank < d.
// Fraction-free forward elimination with full pivoting, then an exact
// back-substitution (the solution components are signed maximal minors).
template <typename I>
bool hyperplane_normal(std::vector<std::vector<I>>& u, int d, std::vector<I>& nv,
                       std::vector<int>& colp) {
  const int cols = d + 1;
  colp.resize(cols);
  for (int c = 0; c < cols; ++c) colp[c] = c;
  I prev = 1;
  for (int k = 0; k < d; ++k) {
    int pr = -1, pc = -1;
    for (int c = k; c < cols && pr < 0; ++c) {
      for (int r = k; r < d; ++r) {
        if (u[r][colp[c]] != 0) { pr = r; pc = c; break; }
      }
    }
    if (pr < 0) return false;
    std::swap(colp[k], colp[pc]);
    std::swap(u[k], u[pr]);
    const I& piv = u[k][colp[k]];
    for (int r = k + 1; r < d; ++r) {
      for (int c = k + 1; c < cols; ++c) {
        u[r][colp[c]] = (u[r][colp[c]] * piv - u[r][colp[k]] * u[k][colp[c]]) / prev;
      }
      u[r][colp[k]] = 0;
    }
    prev = piv;
  }
  // Seeds from the last row; the remaining entries are exact quotients.
  nv.assign(cols, I(0));
  std::vector<I> y(cols, I(0));
  y[d] = u[d - 1][colp[d - 1]];
  y[d - 1] = -u[d - 1][colp[d]];
  for (int k = d - 2; k >= 0; --k) {
    I s = 0;
    for (int j = k + 1; j <= d; ++j) s += u[k][colp[j]] * y[j];
    I q = -s / u[k][colp[k]];
    if (q * u[k][colp[k]] != -s) return false;  // non-exact: caller falls back
    y[k] = q;
  }
  for (int c = 0; c < cols; ++c) nv[colp[c]] = y[c];
  return true;
}

// Rational fallback for degenerate pivoting/divisibility corner cases.
bool hyperplane_normal_rat(const std::vector<std::vector<Int>>& rows, int d,
                           std::vector<Int>& nv) {
  std::vector<std::vector<Rat>> m;
  for (const auto& r : rows) {
    std::vector<Rat> rr;
    for (const auto& v : r) rr.emplace_back(v);
    m.push_back(std::move(rr));
  }
  return kernel_direction(m, d + 1, nv);
}

struct FacetCandidate {
  std::uint64_t mask;
  std::vector<Int> normal;  // oriented so every vertex has dot <= 0
};

template <typename I>
void facet_scan_range(const std::vector<std::vector<I>>& hom, int d, int first_lo, int first_hi,
                      int stride, std::map<std::uint64_t, std::vector<Int>>& out) {
  const int n = static_cast<int>(hom.size());
  std::vector<int> idx(d);
  std::vector<std::vector<I>> u(d, std::vector<I>(d + 1));
  std::vector<I> nv;
  std::vector<int> colp;
  for (int i0 = first_lo; i0 <= first_hi; i0 += stride) {
    for (int i = 0; i < d; ++i) idx[i] = i0 + i;
    if (idx[d - 1] >= n) continue;
    bool done = false;
    while (!done && idx[0] == i0) {
      for (int i = 0; i < d; ++i) u[i] = hom[idx[i]];
      bool ok = hyperplane_normal(u, d, nv, colp);
      if (!ok) {
        // Retry over the rationals (rank decided exactly there too).
        std::vector<std::vector<Int>> rows;
        for (int i = 0; i < d; ++i) {
          std::vector<Int> r;
          for (const auto& v : hom[idx[i]]) r.push_back(Int(v));
          rows.push_back(std::move(r));
        }
        std::vector<Int> nvi;
        if (hyperplane_normal_rat(rows, d, nvi)) {
          nv.clear();
          for (const auto& v : nvi) nv.push_back(static_cast<I>(v));
          ok = true;
        }
      }
      if (ok) {
        bool pos = false, neg = false;
        for (int vtx = 0; vtx < n && !(pos && neg); ++vtx) {
          I dot = 0;
          for (int c = 0; c <= d; ++c) dot += nv[c] * hom[vtx][c];
          if (dot > 0) pos = true;
          else if (dot < 0) neg = true;
        }
        if (!(pos && neg)) {
          std::uint64_t mask = 0;
          for (int vtx = 0; vtx < n; ++vtx) {
            I dot = 0;
            for (int c = 0; c <= d; ++c) dot += nv[c] * hom[vtx][c];
            if (dot == 0) mask |= std::uint64_t{1} << vtx;
          }
          if (!out.count(mask)) {
            std::vector<Int> normal;
            for (const auto& v : nv) normal.push_back(Int(v));
            if (pos) {
              for (auto& v : normal) v = -v;
            }
            out.emplace(mask, std::move(normal));
          }
        }
      }
      next_combination_done(idx, n, done);
    }
  }
}

template <typename I>
HPolytope facets_from_hom(const std::vector<std::vector<I>>& hom, int d) {
  const int n = static_cast<int>(hom.size());
  const int jobs = std::min(max_threads(), n - d + 1);
  std::vector<std::map<std::uint64_t, std::vector<Int>>> maps(jobs);
  if (jobs <= 1) {
    facet_scan_range(hom, d, 0, n - d, 1, maps[0]);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] { facet_scan_range(hom, d, t, n - d, jobs, maps[t]); });
    }
    for (auto& th : threads) th.join();
  }
  std::map<std::uint64_t, std::vector<Int>> merged;
  for (auto& m : maps) merged.merge(m);

  HPolytope out;
  out.dim = d;
  for (auto& [mask, normal] : merged) {
    Int g = 0;
    for (const auto& v : normal) g = int_gcd(g, boost::multiprecision::abs(v));
    LinearInequality row;
    for (int c = 0; c < d; ++c) row.coeffs.push_back(normal[c] / g);
    row.bound = -(normal[d] / g);
    out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
    return a.coeffs != b.coeffs ? a.coeffs < b.coeffs : a.bound < b.bound;
  });
  return out;
}

}  // namespace

HPolytope facets_of(const VPolytope& v) {
  const int d = v.dim;
  const int n = static_cast<int>(v.vertices.size());
  if (d < 1 || d > 6) throw std::invalid_argument("facets_of: dimension must be in [1, 6]");
  if (n > 64) throw ScaleError("facets_of: more than 64 vertices");
  if (n < d + 1) throw std::invalid_argument("facets_of: too few vertices for a full-dim hull");

  // Homogeneous integer coordinates (x * den, den), gcd-reduced per vertex.
  std::vector<std::vector<Int>> hom;
  Int max_abs = 0;
  for (const auto& vx : v.vertices) {
    Int den = 1;
    for (const auto& c : vx) den = den / int_gcd(den, rat_den(c)) * rat_den(c);
    std::vector<Int> h;
    for (const auto& c : vx) h.push_back(rat_num(c) * (den / rat_den(c)));
    h.push_back(den);
    Int g = 0;
    for (const auto& c : h) g = int_gcd(g, boost::multiprecision::abs(c));
    for (auto& c : h) {
      c /= g;
      Int a = boost::multiprecision::abs(c);
      if (a > max_abs) max_abs = a;
    }
    hom.push_back(std::move(h));
  }
  {
    std::vector<std::vector<Rat>> m;
    for (const auto& h : hom) {
      std::vector<Rat> r;
      for (const auto& c : h) r.emplace_back(c);
      m.push_back(std::move(r));
    }
    int rank = rat_rank(m);
    if (rank != d + 1) {
      throw std::invalid_argument("facets_of: hull is not full-dimensional (affine dimension " +
                                  std::to_string(rank - 1) + " < " + std::to_string(d) + ")");
    }
  }

  // Values below 2^40 keep every intermediate determinant inside 512 bits.
  if (max_abs < (Int(1) << 40)) {
    std::vector<std::vector<int512_t>> hom5;
    for (const auto& h : hom) {
      std::vector<int512_t> r;
      for (const auto& c : h) r.push_back(static_cast<int512_t>(c));
      hom5.push_back(std::move(r));
    }
    return facets_from_hom(hom5, d);
  }
  return facets_from_hom(hom, d);
}

VPolytope lift_union(const VPolytope& p1, const VPolytope& p2) {
  if (p1.dim != p2.dim) throw std::invalid_argument("lift_union: dimension mismatch");
  VPolytope out;
  out.dim = p1.dim + 1;
  for (const auto& v : p1.vertices) {
    auto w = v;
    w.emplace_back(0);
    out.vertices.push_back(std::move(w));
  }
  for (const auto& v : p2.vertices) {
    auto w = v;
    w.emplace_back(1);
    out.vertices.push_back(std::move(w));
  }
  return out;
}

bool parallelogram_lattice_free(const LatticePoint2& y, const Int& p, const Int& q) {
  const Int vy = p * y.y1 - q * y.y2;
  if (vy < 0 || y.y2 <= 0) {
    throw std::invalid_argument("parallelogram_lattice_free: y must lie in the cone");
  }
  for (Int x2 = 1; x2 < y.y2; ++x2) {
    // v.x = p*x1 - q*x2 in [0, vy]
    Int lo = -floor_div(-(q * x2), p);          // ceil(q x2 / p)
    Int hi = floor_div(vy + q * x2, p);
    if (lo <= hi) return false;
  }
  return true;
}

HPolytope encoding_triangle(const Encoding& enc) {
  HPolytope q;
  q.dim = 2;
  q.rows.push_back({{Int(0), Int(-1)}, -enc.g1});              // y2 >= g1
  q.rows.push_back({{Int(1), Int(0)}, enc.q});                 // y1 <= q
  q.rows.push_back({{Int(-enc.p), Int(enc.q)}, Int(0)});       // v.y >= 0
  return q;
}

std::vector<LatticePoint2> lattice_points_2d(const HPolytope& h) {
  if (h.dim != 2) throw std::invalid_argument("lattice_points_2d: dimension must be 2");
  VPolytope v = vertices_of(h);
  if (v.vertices.empty()) return {};
  Int lo1, hi1, lo2, hi2;
  bool first = true;
  for (const auto& vx : v.vertices) {
    Int a = floor_div(rat_num(vx[0]), rat_den(vx[0]));
    Int b = -floor_div(-rat_num(vx[0]), rat_den(vx[0]));
    Int c = floor_div(rat_num(vx[1]), rat_den(vx[1]));
    Int d = -floor_div(-rat_num(vx[1]), rat_den(vx[1]));
    if (first) {
      lo1 = a; hi1 = b; lo2 = c; hi2 = d;
      first = false;
    } else {
      if (a < lo1) lo1 = a;
      if (b > hi1) hi1 = b;
      if (c < lo2) lo2 = c;
      if (d > hi2) hi2 = d;
    }
  }
  if ((hi1 - lo1 + 1) * (hi2 - lo2 + 1) > scan_limit()) {
    throw ScaleError("lattice_points_2d: bounding box exceeds the scan guard");
  }
  std::vector<LatticePoint2> pts;
  std::vector<Int> x(2);
  for (Int a = lo1; a <= hi1; ++a) {
    for (Int b = lo2; b <= hi2; ++b) {
      x[0] = a;
      x[1] = b;
      if (h.contains_int(x)) pts.push_back({a, b});
    }
  }
  return pts;
}

// ---------------------------------------------------------------------------
// GIP builders
// ---------------------------------------------------------------------------

void GIPInstance::validate() const {
  if (A.size() != b.size() || B.size() != b.size() || C.size() != b.size()) {
    throw std::invalid_argument("GIP: mismatched row counts");
  }
  for (const auto& r : A) {
    if (static_cast<int>(r.size()) != n_x) throw std::invalid_argument("GIP: bad A row arity");
  }
  if (r_mu > r_nu) throw std::invalid_argument("GIP: empty interval R");
  if (static_cast<int>(x_box.ranges.size()) != n_x) {
    throw std::invalid_argument("GIP: x_box arity mismatch");
  }
}

namespace {

VPolytope dedup_vertices(VPolytope v) {
  std::sort(v.vertices.begin(), v.vertices.end());
  v.vertices.erase(std::unique(v.vertices.begin(), v.vertices.end()), v.vertices.end());
  return v;
}

// Coefficients of the four slack expressions over (z, y1, y2, x1, x2) plus a
// constant: v.y - v.x, v.x, y2 - 1 - x2, x2 - 1.
struct Slack {
  Int z, y1, y2, x1, x2, c;
};

BoundedBox system_x_box(const Encoding& enc, int n_t) {
  BoundedBox box;
  Int lo = floor_div(enc.source.mu - enc.p, enc.M) - 1;
  Int hi = 2 * enc.q + 1;
  Int hi2 = floor_div(enc.source.nu, enc.M) + 1;
  if (hi2 > hi) hi = hi2;
  box.ranges.emplace_back(lo, hi);            // x1
  box.ranges.emplace_back(Int(0), enc.p);     // x2
  for (int i = 0; i < n_t; ++i) box.ranges.emplace_back(Int(0), Int(1));
  return box;
}

}  // namespace

GIPInstance build_system1(const Encoding& enc) {
  const Int &M = enc.M, &p = enc.p, &q = enc.q;
  const Int N = int_pow(M + p + q, 3);
  const Int B1 = 2 * N + M * N;
  const Int B2 = 2 * N * (p + q);

  // t-plane pieces of each disjunction: the mod-window strip and the
  // nonnegative-slack strip, both truncated to the sound big box.
  VPolytope strip1{2, {}};
  strip1.vertices = {{Rat(1), Rat(-B2)}, {Rat(1), Rat(B2)}, {Rat(M - 1), Rat(-B2)},
                     {Rat(M - 1), Rat(B2)}};
  VPolytope strip2{2, {}};
  strip2.vertices = {{Rat(-B1), Rat(0)}, {Rat(-B1), Rat(B2)}, {Rat(B1), Rat(0)},
                     {Rat(B1), Rat(B2)}};
  const HPolytope lifted = facets_of(lift_union(dedup_vertices(strip1), dedup_vertices(strip2)));

  const std::vector<Slack> slacks = {
      {0, p, -q, -p, q, 0},   // v.y - v.x
      {0, 0, 0, p, -q, 0},    // v.x
      {0, 0, 1, 0, -1, -1},   // y2 - 1 - x2
      {0, 0, 0, 0, 1, -1},    // x2 - 1
  };

  GIPInstance g;
  g.n_x = 6;
  for (int j = 0; j < 4; ++j) {
    const Slack& s = slacks[j];
    for (const auto& row : lifted.rows) {
      const Int &al = row.coeffs[0], &be = row.coeffs[1], &ga = row.coeffs[2];
      // al*(z - y2 - M x1) + be*(slack_j) + ga*t_j <= bound - be*const
      std::vector<Int> ax(6, 0), by(2, 0), cz(1, 0);
      cz[0] = al + be * s.z;
      by[0] = be * s.y1;
      by[1] = -al + be * s.y2;
      ax[0] = -M * al + be * s.x1;
      ax[1] = be * s.x2;
      ax[2 + j] = ga;
      g.A.push_back(std::move(ax));
      g.B.push_back(std::move(by));
      g.C.push_back(std::move(cz));
      g.b.push_back(row.bound - be * s.c);
    }
  }
  g.r_mu = enc.source.mu;
  g.r_nu = enc.source.nu;
  g.Q = encoding_triangle(enc);
  g.x_box = system_x_box(enc, 4);
  g.validate();
  return g;
}

GIPInstance build_system2(const Encoding& enc) {
  const Int &M = enc.M, &p = enc.p, &q = enc.q, &g1 = enc.g1;
  const Int N = int_pow(M + p + q, 3);

  // Mod-window polytope over (x1, y2, z), 8 facets.
  HPolytope h3;
  h3.dim = 3;
  h3.rows.push_back({{M, Int(1), Int(-1)}, Int(-1)});      // 1 <= z - y2 - M x1
  h3.rows.push_back({{-M, Int(-1), Int(1)}, M - 1});       // z - y2 - M x1 <= M - 1
  h3.rows.push_back({{Int(1), Int(0), Int(0)}, N});
  h3.rows.push_back({{Int(-1), Int(0), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(1), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(-1), Int(0)}, N});
  h3.rows.push_back({{Int(0), Int(0), Int(1)}, N});
  h3.rows.push_back({{Int(0), Int(0), Int(-1)}, N});
  const VPolytope v3 = vertices_of(h3);

  // P1 in R^5 (z, y1, y2, x1, x2): product with y1 in [-N, N], embedded in x2 = 0.
  VPolytope p1;
  p1.dim = 5;
  for (const auto& vx : v3.vertices) {
    for (int side = 0; side < 2; ++side) {
      p1.vertices.push_back({vx[2], Rat(side == 0 ? -N : N), vx[1], vx[0], Rat(0)});
    }
  }
  p1 = dedup_vertices(std::move(p1));

  // Sharpened parallelogram-with-triangle polytope over (y1, y2, x1, x2).
  HPolytope h4;
  h4.dim = 4;
  h4.rows.push_back({{-p, q, p, -q}, Int(0)});             // v.x <= v.y
  h4.rows.push_back({{Int(0), Int(0), -p, q}, Int(0)});    // 0 <= v.x
  h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(1)}, Int(-1)});  // x2 <= y2 - 1
  h4.rows.push_back({{Int(0), Int(0), Int(0), Int(-1)}, Int(-1)});  // x2 >= 1
  h4.rows.push_back({{Int(0), Int(-1), Int(0), Int(0)}, -g1});      // y2 >= g1
  h4.rows.push_back({{Int(1), Int(0), Int(0), Int(0)}, q});         // y1 <= q
  h4.rows.push_back({{-p, q, Int(0), Int(0)}, Int(0)});             // v.y >= 0
  const VPolytope v4 = vertices_of(h4);

  // P2 in R^5: product with R = [mu, nu] for z.
  VPolytope p2;
  p2.dim = 5;
  for (const auto& vx : v4.vertices) {
    p2.vertices.push_back({Rat(enc.source.mu), vx[0], vx[1], vx[2], vx[3]});
    p2.vertices.push_back({Rat(enc.source.nu), vx[0], vx[1], vx[2], vx[3]});
  }
  p2 = dedup_vertices(std::move(p2));

  const HPolytope facets = facets_of(lift_union(p1, p2));  // (z, y1, y2, x1, x2, t)

  GIPInstance g;
  g.n_x = 3;
  for (const auto& row : facets.rows) {
    g.A.push_back({row.coeffs[3], row.coeffs[4], row.coeffs[5]});
    g.B.push_back({row.coeffs[1], row.coeffs[2]});
    g.C.push_back({row.coeffs[0]});
    g.b.push_back(row.bound);
  }
  g.r_mu = enc.source.mu;
  g.r_nu = enc.source.nu;
  g.Q = encoding_triangle(enc);
  g.x_box = system_x_box(enc, 1);
  g.validate();
  return g;
}

// ---------------------------------------------------------------------------
// Textual formats
// ---------------------------------------------------------------------------

namespace {

std::string rat_str(const Rat& r) { return rat_num(r).str() + "/" + rat_den(r).str(); }

Rat parse_rat(const std::string& s, int lineno) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError(lineno, "expected rational, got '" + s + "'");
  }
}

}  // namespace

std::string to_text(const HPolytope& h) {
  std::ostringstream os;
  os << "H " << h.dim << " " << h.rows.size() << "\n";
  for (const auto& r : h.rows) {
    for (const auto& c : r.coeffs) os << c << " ";
    os << r.bound << "\n";
  }
  return os.str();
}

std::string to_text(const VPolytope& v) {
  std::ostringstream os;
  os << "V " << v.dim << " " << v.vertices.size() << "\n";
  for (const auto& vx : v.vertices) {
    for (std::size_t i = 0; i < vx.size(); ++i) os << (i ? " " : "") << rat_str(vx[i]);
    os << "\n";
  }
  return os.str();
}

std::string to_text(const GIPInstance& g) {
  std::ostringstream os;
  os << "GIP " << g.n_x << " 2 1 " << g.rows() << "\n";
  auto block = [&os](const char* name, const std::vector<std::vector<Int>>& m) {
    os << name << "\n";
    for (const auto& row : m) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
      os << "\n";
    }
  };
  block("A", g.A);
  block("B", g.B);
  block("C", g.C);
  os << "b\n";
  for (const auto& v : g.b) os << v << "\n";
  os << "R " << g.r_mu << " " << g.r_nu << "\n";
  os << "Q " << g.Q.rows.size() << "\n";
  for (const auto& r : g.Q.rows) {
    os << r.coeffs[0] << " " << r.coeffs[1] << " " << r.bound << "\n";
  }
  os << "XBOX";
  for (const auto& [lo, hi] : g.x_box.ranges) os << " " << lo << " " << hi;
  os << "\n";
  return os.str();
}

GIPInstance parse_gip(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  GIPInstance g;
  long long nrows = -1;
  if (!std::getline(is, line)) throw ParseError(1, "empty GIP file");
  ++lineno;
  {
    std::istringstream ls(line);
    std::string head;
    long long nx, ny, nz;
    if (!(ls >> head >> nx >> ny >> nz >> nrows) || head != "GIP" || ny != 2 || nz != 1 ||
        nx < 1 || nrows < 0) {
      throw ParseError(lineno, "expected GIP header");
    }
    g.n_x = static_cast<int>(nx);
  }
  auto read_block = [&](const std::string& name, std::size_t width,
                        std::vector<std::vector<Int>>& out) {
    if (!std::getline(is, line)) throw ParseError(lineno, "missing " + name + " block");
    ++lineno;
    if (line != name) throw ParseError(lineno, "expected " + name + " block");
    for (long long r = 0; r < nrows; ++r) {
      if (!std::getline(is, line)) throw ParseError(lineno, "missing " + name + " row");
      ++lineno;
      std::istringstream ls(line);
      std::vector<Int> vals;
      std::string tok;
      while (ls >> tok) vals.emplace_back(tok);
      if (vals.size() != width) throw ParseError(lineno, name + " row arity mismatch");
      out.push_back(std::move(vals));
    }
  };
  read_block("A", static_cast<std::size_t>(g.n_x), g.A);
  read_block("B", 2, g.B);
  read_block("C", 1, g.C);
  {
    std::vector<std::vector<Int>> bcol;
    read_block("b", 1, bcol);
    for (auto& v : bcol) g.b.push_back(std::move(v[0]));
  }
  bool have_r = false, have_box = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "R") {
      std::string a, b;
      if (!(ls >> a >> b)) throw ParseError(lineno, "bad R record");
      g.r_mu = Int(a);
      g.r_nu = Int(b);
      have_r = true;
    } else if (tag == "Q") {
      long long qr;
      if (!(ls >> qr) || qr < 0) throw ParseError(lineno, "bad Q record");
      g.Q.dim = 2;
      for (long long i = 0; i < qr; ++i) {
        if (!std::getline(is, line)) throw ParseError(lineno, "missing Q row");
        ++lineno;
        std::istringstream qs(line);
        std::string a, b, c;
        if (!(qs >> a >> b >> c)) throw ParseError(lineno, "bad Q row");
        g.Q.rows.push_back({{Int(a), Int(b)}, Int(c)});
      }
    } else if (tag == "XBOX") {
      std::string tok;
      std::vector<Int> vals;
      while (ls >> tok) vals.emplace_back(tok);
      if (vals.size() != static_cast<std::size_t>(g.n_x) * 2) {
        throw ParseError(lineno, "XBOX arity mismatch");
      }
      for (int i = 0; i < g.n_x; ++i) g.x_box.ranges.emplace_back(vals[2 * i], vals[2 * i + 1]);
      have_box = true;
    } else {
      throw ParseError(lineno, "unrecognized record '" + tag + "'");
    }
  }
  if (!have_r || !have_box) throw ParseError(lineno, "missing R or XBOX record");
  g.validate();
  return g;
}

}  // namespace presred
