/// @file quadratic_space.hpp
/// Quadratic spaces of dimension seven over the rationals and the
/// Kähler-Atiyah product structure they induce: generalized products,
/// geometric product, Hodge star, half-spinor projections and the
/// truncated product. A 128x128 blade multiplication table is cached per
/// space; an integer-scaled copy of the table drives the exhaustive
/// associativity sweep.
///
/// Sign conventions. The contraction chain removing an index subset acts
/// largest-index-first on both factors of a generalized product; the pair
/// of chain signs is convention-independent, so the minor expansion
///   a tri_k b = sum_{S,T} det(Hinv[S,T]) (iota_S a) wedge (iota_T b)
/// reproduces the ordered-tuple definition exactly.

#pragma once

#include "ka/linalg.hpp"
#include "ka/multivector.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ka {

class QuadraticSpace {
 public:
  /// Builds from a symmetric invertible 7x7 metric on vectors.
  explicit QuadraticSpace(const Mat& metric, int orientation = +1) {
    if (metric.rows() != 7 || metric.cols() != 7) throw input_error("metric must be 7x7");
    if (orientation != 1 && orientation != -1) throw input_error("orientation must be +1 or -1");
    for (size_t i = 0; i < 7; ++i)
      for (size_t j = 0; j < i; ++j)
        if (metric(i, j) != metric(j, i)) throw input_error("metric must be symmetric");
    auto inv = inverse(metric);
    if (!inv) throw input_error("metric must be invertible");
    auto c = std::make_shared<Core>();
    c->h = metric;
    c->hinv = std::move(*inv);
    c->orientation = orientation;
    c->sig = signature(metric);
    c->deth = det(metric);
    c->diagonal = true;
    for (size_t i = 0; i < 7 && c->diagonal; ++i)
      for (size_t j = 0; j < 7; ++j)
        if (i != j && metric(i, j) != 0) c->diagonal = false;
    core_ = std::move(c);
  }

  /// Diagonal metric from seven signs; signs[i] is the square of e^{i+1}.
  static QuadraticSpace diagonal(const std::array<int, 7>& signs, int orientation = +1) {
    Mat m(7, 7);
    for (size_t i = 0; i < 7; ++i) {
      if (signs[i] != 1 && signs[i] != -1) throw input_error("diagonal entries must be +1 or -1");
      m(i, i) = signs[i];
    }
    return QuadraticSpace(m, orientation);
  }

  /// Signature string "+--..." (7 chars), metric diag(signs) on covectors
  /// and vectors alike.
  static QuadraticSpace from_signature(const std::string& s, int orientation = +1) {
    if (s.size() != 7) throw input_error("signature string must have 7 characters");
    std::array<int, 7> signs{};
    for (size_t i = 0; i < 7; ++i) {
      if (s[i] == '+')
        signs[i] = 1;
      else if (s[i] == '-')
        signs[i] = -1;
      else
        throw input_error("signature characters must be '+' or '-'", static_cast<long>(i));
    }
    return QuadraticSpace::diagonal(signs, orientation);
  }

  /// The split metric with three conjugate isotropic pairs and one unit
  /// direction: h = [[0,1,0],[1,0,0],[0,0,1]] in 3+3+1 blocks.
  static QuadraticSpace null_basis(int orientation = +1) {
    Mat m(7, 7);
    for (size_t i = 0; i < 3; ++i) {
      m(i, i + 3) = 1;
      m(i + 3, i) = 1;
    }
    m(6, 6) = 1;
    return QuadraticSpace(m, orientation);
  }

  const Mat& metric() const { return core_->h; }
  const Mat& inverse_metric() const { return core_->hinv; }
  int orientation() const { return core_->orientation; }
  std::pair<int, int> sig() const { return core_->sig; }
  const Rational& det_metric() const { return core_->deth; }
  bool is_diagonal() const { return core_->diagonal; }

  bool same_space(const QuadraticSpace& o) const { return core_ == o.core_; }

  /// h*(theta1, theta2) for covector component vectors.
  Rational pair_covectors(const Vec7& a, const Vec7& b) const {
    Rational r(0);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (a[i] != 0 && b[j] != 0 && core_->hinv(i, j) != 0) r += a[i] * core_->hinv(i, j) * b[j];
    return r;
  }

  /// det of the inverse-metric submatrix rows S, cols T (equal popcount).
  const Rational& minor(BladeMask s, BladeMask t) const {
    ensure_minors();
    return core_->minors[(static_cast<int>(s) << 7) | t];
  }

  /// Sparse row of the blade multiplication table: e_a diamond e_b.
  const std::vector<Multivector::Term>& blade_product(BladeMask a, BladeMask b) const {
    ensure_table();
    return core_->table[static_cast<int>(a) * kBlades + b];
  }

  bool volume_squares_to_one() const {
    ensure_table();
    return core_->vol_sq_one;
  }

  struct FastTable {
    std::vector<std::pair<BladeMask, std::int64_t>> arena;
    std::array<std::uint32_t, kBlades * kBlades + 1> offsets;
    std::int64_t max_abs = 0;
  };

  /// Integer copy of the table (entries must be integral and small);
  /// nullptr when the coefficients do not fit the fast-path bounds.
  const FastTable* fast_table() const {
    ensure_fast();
    return core_->fast_ok ? &core_->fast : nullptr;
  }

 private:
  struct Core {
    Mat h, hinv;
    int orientation = 1;
    std::pair<int, int> sig;
    Rational deth;
    bool diagonal = false;

    mutable std::once_flag minors_once, table_once, fast_once;
    mutable std::vector<Rational> minors;            // indexed (s<<7)|t
    mutable std::vector<std::vector<Multivector::Term>> table;  // 128*128 rows
    mutable bool vol_sq_one = false;
    mutable FastTable fast;
    mutable bool fast_ok = false;
  };

  void ensure_minors() const {
    std::call_once(core_->minors_once, [this] { build_minors(); });
  }
  void ensure_table() const {
    std::call_once(core_->table_once, [this] { build_table(); });
  }
  void ensure_fast() const {
    std::call_once(core_->fast_once, [this] { build_fast(); });
  }

  void build_minors() const {
    auto& minors = core_->minors;
    minors.assign(kBlades * kBlades, Rational(0));
    minors[0] = 1;
    for (int s = 1; s < kBlades; ++s) {
      int k = blade_degree(static_cast<BladeMask>(s));
      std::array<int, 7> rows{};
      int nr = 0;
      for (int i = 0; i < 7; ++i)
        if (s & (1 << i)) rows[nr++] = i;
      for (int t = 1; t < kBlades; ++t) {
        if (blade_degree(static_cast<BladeMask>(t)) != k) continue;
        std::array<int, 7> cols{};
        int nc = 0;
        for (int j = 0; j < 7; ++j)
          if (t & (1 << j)) cols[nc++] = j;
        Mat sub(k, k);
        bool any = false;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            sub(i, j) = core_->hinv(rows[i], cols[j]);
            if (sub(i, j) != 0) any = true;
          }
        if (any) minors[(s << 7) | t] = det(std::move(sub));
      }
    }
  }

  /// e_a tri_k e_b via the minor expansion, accumulated into acc.
  void blade_gen_into(BladeMask a, BladeMask b, int k, DenseAccum& acc,
                      const Rational& scale) const {
    if (k == 0) {
      int s = wedge_sign(a, b);
      if (s != 0) acc.add(static_cast<BladeMask>(a | b), s > 0 ? scale : -scale);
      return;
    }
    int p = blade_degree(a), q = blade_degree(b);
    if (k > p || k > q) return;
    // enumerate k-subsets S of a and T of b
    for (BladeMask sm = a;; sm = static_cast<BladeMask>((sm - 1) & a)) {
      if (blade_degree(sm) == k) {
        int ssign = subset_removal_sign(a, sm);
        BladeMask ra = static_cast<BladeMask>(a & ~sm);
        for (BladeMask tm = b;; tm = static_cast<BladeMask>((tm - 1) & b)) {
          if (blade_degree(tm) == k) {
            const Rational& mnr = minor(sm, tm);
            if (mnr != 0) {
              BladeMask rb = static_cast<BladeMask>(b & ~tm);
              int w = wedge_sign(ra, rb);
              if (w != 0) {
                int tsign = subset_removal_sign(b, tm);
                Rational c = mnr * scale;
                if (ssign * tsign * w < 0) c = -c;
                acc.add(static_cast<BladeMask>(ra | rb), c);
              }
            }
          }
          if (tm == 0) break;
        }
      }
      if (sm == 0) break;
    }
  }

  static int geo_sign(int p, int k) {
    // (-1)^{C(k+1,2) + p k}
    int e = (k + 1) * k / 2 + p * k;
    return (e & 1) ? -1 : 1;
  }

  void build_table() const {
    ensure_minors();
    auto& table = core_->table;
    table.assign(kBlades * kBlades, {});
    DenseAccum acc;
    for (int a = 0; a < kBlades; ++a) {
      int p = blade_degree(static_cast<BladeMask>(a));
      for (int b = 0; b < kBlades; ++b) {
        if (core_->diagonal) {
          // Orthogonal basis: single-term product with transposition sign
          // and metric factors over the repeated indices.
          BladeMask am = static_cast<BladeMask>(a), bm = static_cast<BladeMask>(b);
          BladeMask common = am & bm;
          int csign = subset_removal_sign(am, common);
          int s2 = subset_removal_sign(bm, common);
          int w = wedge_sign(static_cast<BladeMask>(am & ~common),
                             static_cast<BladeMask>(bm & ~common));
          // Pull each shared covector of b leftwards through the rest of b,
          // then contract; equivalent to the k = popcount(common) term.
          Rational c(1);
          for (int i = 0; i < 7; ++i)
            if (common & (1 << i)) c *= core_->hinv(i, i);
          int k = blade_degree(common);
          int gsign = geo_sign(p, k) * csign * s2 * w;
          if (gsign < 0) c = -c;
          if (c != 0)
            table[a * kBlades + b].emplace_back(static_cast<BladeMask>(am ^ bm), std::move(c));
          continue;
        }
        int q = blade_degree(static_cast<BladeMask>(b));
        int kmax = std::min(p, q);
        for (int k = 0; k <= kmax; ++k)
          blade_gen_into(static_cast<BladeMask>(a), static_cast<BladeMask>(b), k, acc,
                         Rational(geo_sign(p, k)));
        Multivector mv = acc.take();
        table[a * kBlades + b].assign(mv.terms().begin(), mv.terms().end());
      }
    }
    // nu diamond nu
    const auto& row = table[kVolumeMask * kBlades + kVolumeMask];
    core_->vol_sq_one = row.size() == 1 && row[0].first == 0 && row[0].second == 1;
  }

  void build_fast() const {
    ensure_table();
    // Common denominator over the whole table.
    Int lcm = 1;
    for (const auto& row : core_->table)
      for (const auto& [m, c] : row) {
        Int d = den(c);
        lcm = boost::multiprecision::lcm(lcm, d);
        if (lcm > 1000000) return;  // fast path disabled
      }
    constexpr std::int64_t kMaxEntry = 1000000;  // keeps int64 sums exact
    FastTable f;
    f.offsets[0] = 0;
    std::int64_t maxabs = 0;
    for (int i = 0; i < kBlades * kBlades; ++i) {
      for (const auto& [m, c] : core_->table[i]) {
        Rational scaled = c * Rational(lcm);
        auto v = to_int64(scaled);
        if (!v || *v > kMaxEntry || *v < -kMaxEntry) return;
        maxabs = std::max(maxabs, *v < 0 ? -*v : *v);
        f.arena.emplace_back(m, *v);
      }
      f.offsets[i + 1] = static_cast<std::uint32_t>(f.arena.size());
    }
    f.max_abs = maxabs;
    core_->fast = std::move(f);
    core_->fast_ok = true;
  }

  std::shared_ptr<Core> core_;
};

// ---------------------------------------------------------------------------
// Musical isomorphisms

inline Vec7 sharp(const QuadraticSpace& q, const Multivector& theta) {
  if (!theta.is_homogeneous(1)) throw input_error("sharp expects a degree-1 form");
  Vec7 comp{};
  for (const auto& [m, c] : theta.terms()) {
    int i = std::countr_zero(static_cast<unsigned>(m));
    comp[i] = c;
  }
  Vec7 out{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (q.inverse_metric()(i, j) != 0 && comp[j] != 0) out[i] += q.inverse_metric()(i, j) * comp[j];
  return out;
}

inline Multivector flat(const QuadraticSpace& q, const Vec7& v) {
  Multivector r;
  for (int i = 0; i < 7; ++i) {
    Rational c(0);
    for (int j = 0; j < 7; ++j)
      if (q.metric()(i, j) != 0 && v[j] != 0) c += q.metric()(i, j) * v[j];
    if (c != 0) r += Multivector::covector(i + 1, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generalized, geometric and truncated products

/// a tri_k b, the k-fold metric contraction component of the geometric
/// product; zero when k exceeds the degree of either factor.
inline Multivector gen_product(const QuadraticSpace& q, const Multivector& a,
                               const Multivector& b, int k) {
  if (k < 0 || k > 7) throw input_error("generalized product index must be in 0..7");
  DenseAccum acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int p = blade_degree(ma), deg_b = blade_degree(mb);
      if (k > p || k > deg_b) continue;
      // expand via table-free minor route
      for (BladeMask sm = ma;; sm = static_cast<BladeMask>((sm - 1) & ma)) {
        if (blade_degree(sm) == k) {
          int ssign = subset_removal_sign(ma, sm);
          BladeMask ra = static_cast<BladeMask>(ma & ~sm);
          for (BladeMask tm = mb;; tm = static_cast<BladeMask>((tm - 1) & mb)) {
            if (blade_degree(tm) == k) {
              const Rational& mnr = q.minor(sm, tm);
              if (mnr != 0) {
                BladeMask rb = static_cast<BladeMask>(mb & ~tm);
                int w = wedge_sign(ra, rb);
                if (w != 0) {
                  int tsign = subset_removal_sign(mb, tm);
                  Rational c = ca * cb * mnr;
                  if (ssign * tsign * w < 0) c = -c;
                  acc.add(static_cast<BladeMask>(ra | rb), c);
                }
              }
            }
            if (tm == 0) break;
          }
        }
        if (sm == 0) break;
      }
    }
  return acc.take();
}

/// Geometric product (the Clifford product on exterior forms).
inline Multivector geo_product(const QuadraticSpace& q, const Multivector& a,
                               const Multivector& b) {
  DenseAccum acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      for (const auto& [m, c] : q.blade_product(ma, mb)) acc.add(m, ca * cb * c);
  return acc.take();
}

/// Extended metric pairing, degree-wise (full contraction).
inline Rational inner(const QuadraticSpace& q, const Multivector& a, const Multivector& b) {
  Rational r(0);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (blade_degree(ma) != blade_degree(mb)) continue;
      int s = subset_removal_sign(ma, ma) * subset_removal_sign(mb, mb);
      const Rational& mnr = q.minor(ma, mb);
      if (mnr != 0) r += (s > 0 ? Rational(ca * cb) : Rational(-(ca * cb))) * mnr;
    }
  return r;
}

inline Multivector volume_form(const QuadraticSpace& q) {
  return Multivector::blade(kVolumeMask, Rational(q.orientation()));
}

/// Hodge star, defined through the volume element: *a := tau(a) diamond nu.
inline Multivector hodge(const QuadraticSpace& q, const Multivector& a) {
  return geo_product(q, reversal(a), volume_form(q));
}

/// Half-spinor projection P_l(a) = (a + l * a diamond nu) / 2.
/// Requires nu diamond nu = 1, else the projection is not idempotent.
inline Multivector project_half(const QuadraticSpace& q, int l, const Multivector& a) {
  if (l != 1 && l != -1) throw input_error("l must be +1 or -1");
  if (!q.volume_squares_to_one())
    throw input_error("volume element does not square to one in this metric");
  Multivector av = geo_product(q, a, volume_form(q));
  return Rational(1, 2) * (a + Rational(l) * av);
}

/// Truncated product on degrees <= 3: a vee b = 2 P_<(P_l(a diamond b)).
inline Multivector vee(const QuadraticSpace& q, int l, const Multivector& a,
                       const Multivector& b) {
  if (l != 1 && l != -1) throw input_error("l must be +1 or -1");
  if (!a.is_truncated() || !b.is_truncated())
    throw input_error("vee operands must have degree <= 3");
  if (!q.volume_squares_to_one())
    throw input_error("volume element does not square to one in this metric");
  Multivector x = geo_product(q, a, b);
  Multivector xv = geo_product(q, x, volume_form(q));
  return truncate_low(x) + Rational(l) * truncate_low(xv);
}

// ---------------------------------------------------------------------------
// Exhaustive associativity sweep

struct AssociativityReport {
  bool ok = true;
  std::uint64_t triples = 0;
  BladeMask a = 0, b = 0, c = 0;  // first failing triple, when !ok
  bool used_fast_path = false;
};

/// Checks (e_a e_b) e_c == e_a (e_b e_c) for all 128^3 basis triples.
/// Uses the integer-scaled table when available (exact; the entry bound
/// guarantees int64 accumulations cannot overflow), otherwise exact
/// rational arithmetic.
inline AssociativityReport check_associativity_all_triples(const QuadraticSpace& q) {
  AssociativityReport rep;
  const QuadraticSpace::FastTable* f = q.fast_table();
  if (f) {
    rep.used_fast_path = true;
    const auto& arena = f->arena;
    const auto& off = f->offsets;
    std::array<std::int64_t, kBlades> acc{};
    std::array<std::uint32_t, kBlades> stamp{};
    std::uint32_t epoch = 0;
    std::array<BladeMask, kBlades> touched{};
    for (int a = 0; a < kBlades; ++a) {
      for (int b = 0; b < kBlades; ++b) {
        const std::uint32_t u0 = off[a * kBlades + b], u1 = off[a * kBlades + b + 1];
        for (int c = 0; c < kBlades; ++c) {
          ++epoch;
          int ntouched = 0;
          for (std::uint32_t i = u0; i < u1; ++i) {
            const auto [m, w] = arena[i];
            const std::uint32_t r0 = off[m * kBlades + c], r1 = off[m * kBlades + c + 1];
            for (std::uint32_t j = r0; j < r1; ++j) {
              const auto [t, x] = arena[j];
              if (stamp[t] != epoch) {
                stamp[t] = epoch;
                acc[t] = 0;
                touched[ntouched++] = t;
              }
              acc[t] += w * x;
            }
          }
          const std::uint32_t v0 = off[b * kBlades + c], v1 = off[b * kBlades + c + 1];
          for (std::uint32_t i = v0; i < v1; ++i) {
            const auto [m, w] = arena[i];
            const std::uint32_t r0 = off[a * kBlades + m], r1 = off[a * kBlades + m + 1];
            for (std::uint32_t j = r0; j < r1; ++j) {
              const auto [t, x] = arena[j];
              if (stamp[t] != epoch) {
                stamp[t] = epoch;
                acc[t] = 0;
                touched[ntouched++] = t;
              }
              acc[t] -= w * x;
            }
          }
          ++rep.triples;
          for (int i = 0; i < ntouched; ++i) {
            if (acc[touched[i]] != 0) {
              rep.ok = false;
              rep.a = static_cast<BladeMask>(a);
              rep.b = static_cast<BladeMask>(b);
              rep.c = static_cast<BladeMask>(c);
              return rep;
            }
          }
        }
      }
    }
    return rep;
  }
  // Rational fallback.
  for (int a = 0; a < kBlades; ++a) {
    Multivector ea = Multivector::blade(static_cast<BladeMask>(a));
    for (int b = 0; b < kBlades; ++b) {
      Multivector eb = Multivector::blade(static_cast<BladeMask>(b));
      Multivector ab = geo_product(q, ea, eb);
      for (int c = 0; c < kBlades; ++c) {
        Multivector ec = Multivector::blade(static_cast<BladeMask>(c));
        ++rep.triples;
        if (geo_product(q, ab, ec) != geo_product(q, ea, geo_product(q, eb, ec))) {
          rep.ok = false;
          rep.a = static_cast<BladeMask>(a);
          rep.b = static_cast<BladeMask>(b);
          rep.c = static_cast<BladeMask>(c);
          return rep;
        }
      }
    }
  }
  return rep;
}

/// Hodge star computed from the Gram pairing alone, via the defining
/// relation a wedge (*b) = <a,b> nu. Independent of the geometric product;
/// serves as the cross-check oracle for hodge().
inline Multivector gram_hodge(const QuadraticSpace& q, const Multivector& b) {
  std::array<Rational, kBlades> out{};
  for (int k = 0; k <= kDim; ++k) {
    Multivector bk = b.grade(k);
    if (bk.is_zero()) continue;
    for (int am = 0; am < kBlades; ++am) {
      if (blade_degree(static_cast<BladeMask>(am)) != k) continue;
      Rational pairing = inner(q, Multivector::blade(static_cast<BladeMask>(am)), bk);
      if (pairing == 0) continue;
      BladeMask comp = static_cast<BladeMask>(kVolumeMask & ~am);
      int s = wedge_sign(static_cast<BladeMask>(am), comp);
      out[comp] += Rational(s * q.orientation()) * pairing;
    }
  }
  return Multivector::from_dense(out);
}

/// Checks that the volume element is central and that
/// a diamond nu = nu diamond a = *tau(a) for all basis blades, with the
/// star evaluated through the independent Gram-determinant construction.
inline bool check_volume_laws(const QuadraticSpace& q) {
  Multivector nu = volume_form(q);
  for (int m = 0; m < kBlades; ++m) {
    Multivector a = Multivector::blade(static_cast<BladeMask>(m));
    Multivector an = geo_product(q, a, nu);
    Multivector na = geo_product(q, nu, a);
    if (an != na) return false;
    if (an != gram_hodge(q, reversal(a))) return false;
  }
  return true;
}

}  // namespace ka
