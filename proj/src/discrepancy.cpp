#include "haltonx/discrepancy.hpp"

#include "haltonx/errors.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hx {

Rational local_discrepancy(const std::vector<std::vector<Rational>>& points, const Box& box) {
  BigInt inside = 0;
  for (const auto& p : points) {
    if (box_contains(box, p)) ++inside;
  }
  return Rational(inside) - Rational(BigInt(points.size())) * box_volume(box);
}

Rational local_discrepancy(const std::vector<ExactPoint>& points, const Box& box) {
  std::vector<std::vector<Rational>> values;
  values.reserve(points.size());
  for (const ExactPoint& p : points) values.push_back(p.values());
  return local_discrepancy(values, box);
}

namespace {

struct CornerBest {
  bool set = false;
  // side: 0 = closed-count candidate (limit from above), 1 = open-count candidate
  int side = 0;
  std::size_t xi = 0, yi = 0, zi = 0;
};

// Candidate bookkeeping shared by the integer kernels. The best candidate is
// the largest numerator; ties prefer smaller corner indices and the closed
// side, so the result is independent of evaluation order.
template <typename Int>
struct MaxTracker {
  Int best{};
  CornerBest where;

  void offer(const Int& v, int side, std::size_t xi, std::size_t yi, std::size_t zi) {
    if (v < 0) return;
    if (!where.set || v > best) {
      best = v;
      where = CornerBest{true, side, xi, yi, zi};
      return;
    }
    if (v == best) {
      const auto cur = std::tuple(where.xi, where.yi, where.zi, where.side);
      const auto cand = std::tuple(xi, yi, zi, side);
      if (cand < cur) where = CornerBest{true, side, xi, yi, zi};
    }
  }

  void merge(const MaxTracker& other) {
    if (!other.where.set) return;
    offer(other.best, other.where.side, other.where.xi, other.where.yi, other.where.zi);
  }
};

template <typename Int>
struct ScaledPoints {
  std::vector<std::vector<Int>> coords;  // [dim][point]
  std::vector<Int> scale;                // one denominator per dimension
};

// Common per-dimension denominator and integer coordinates.
ScaledPoints<BigInt> scale_points(const std::vector<std::vector<Rational>>& points, int s) {
  ScaledPoints<BigInt> out;
  out.scale.assign(static_cast<std::size_t>(s), BigInt(1));
  for (int i = 0; i < s; ++i) {
    for (const auto& p : points) {
      const BigInt& den = denominator(p[static_cast<std::size_t>(i)]);
      out.scale[static_cast<std::size_t>(i)] =
          out.scale[static_cast<std::size_t>(i)] / gcd(out.scale[static_cast<std::size_t>(i)], den) *
          den;
    }
  }
  out.coords.assign(static_cast<std::size_t>(s), {});
  for (int i = 0; i < s; ++i) {
    auto& row = out.coords[static_cast<std::size_t>(i)];
    row.reserve(points.size());
    for (const auto& p : points) {
      const Rational& x = p[static_cast<std::size_t>(i)];
      row.push_back(numerator(x) * (out.scale[static_cast<std::size_t>(i)] / denominator(x)));
    }
  }
  return out;
}

template <typename Int>
ScaledPoints<Int> narrow_points(const ScaledPoints<BigInt>& wide) {
  ScaledPoints<Int> out;
  out.scale.reserve(wide.scale.size());
  for (const BigInt& v : wide.scale) out.scale.push_back(static_cast<Int>(v));
  out.coords.resize(wide.coords.size());
  for (std::size_t i = 0; i < wide.coords.size(); ++i) {
    out.coords[i].reserve(wide.coords[i].size());
    for (const BigInt& v : wide.coords[i]) out.coords[i].push_back(static_cast<Int>(v));
  }
  return out;
}

template <typename Int>
std::vector<Int> sorted_corners(const std::vector<Int>& coords, const Int& one) {
  std::vector<Int> xs = coords;
  xs.push_back(one);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

template <typename Int>
struct StarOutcome {
  Int best{};
  Int denom{};  // N * product of scales
  CornerBest where;
};

template <typename Int>
StarOutcome<Int> star_1d(const ScaledPoints<Int>& pts, std::size_t n) {
  const Int& L = pts.scale[0];
  std::vector<Int> a = pts.coords[0];
  std::sort(a.begin(), a.end());
  const std::vector<Int> xs = sorted_corners(a, L);
  const Int nn = Int(static_cast<long>(n));

  MaxTracker<Int> tracker;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const Int& xi = xs[t];
    const auto closed =
        static_cast<long>(std::upper_bound(a.begin(), a.end(), xi) - a.begin());
    const auto open =
        static_cast<long>(std::lower_bound(a.begin(), a.end(), xi) - a.begin());
    tracker.offer(Int(closed) * L - nn * xi, 0, t, 0, 0);
    tracker.offer(nn * xi - Int(open) * L, 1, t, 0, 0);
  }
  return StarOutcome<Int>{tracker.best, nn * L, tracker.where};
}

template <typename Int>
StarOutcome<Int> star_2d(const ScaledPoints<Int>& pts, std::size_t n, bool parallel) {
  const Int& L1 = pts.scale[0];
  const Int& L2 = pts.scale[1];
  const std::vector<Int> xs = sorted_corners(pts.coords[0], L1);
  const std::vector<Int> ys = sorted_corners(pts.coords[1], L2);
  const Int nn = Int(static_cast<long>(n));
  const Int scale = L1 * L2;

  // Points sorted by first coordinate; second coordinate stored as a rank.
  std::vector<std::pair<Int, std::size_t>> order;  // (a, y-rank)
  order.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto rank = static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), pts.coords[1][j]) - ys.begin());
    order.emplace_back(pts.coords[0][j], rank);
  }
  std::sort(order.begin(), order.end());

  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();

  int threads = 1;
#ifdef _OPENMP
  if (parallel && nx >= 64) threads = std::min(omp_get_max_threads(), 8);
#else
  (void)parallel;
#endif

  std::vector<MaxTracker<Int>> results(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const std::size_t lo = nx * static_cast<std::size_t>(tid) / static_cast<std::size_t>(threads);
    const std::size_t hi =
        nx * (static_cast<std::size_t>(tid) + 1) / static_cast<std::size_t>(threads);

    MaxTracker<Int>& tracker = results[static_cast<std::size_t>(tid)];
    std::vector<long> rank_count(ny, 0);
    std::vector<long> prefix(ny + 1, 0);

    // Points strictly left of this chunk.
    std::size_t inserted = 0;
    if (lo < hi) {
      while (inserted < n && order[inserted].first < xs[lo]) {
        ++rank_count[order[inserted].second];
        ++inserted;
      }
    }

    for (std::size_t t = lo; t < hi; ++t) {
      const Int& xi = xs[t];

      // Open side: both coordinates strict.
      prefix[0] = 0;
      for (std::size_t r = 0; r < ny; ++r) prefix[r + 1] = prefix[r] + rank_count[r];
      for (std::size_t u = 0; u < ny; ++u) {
        // #（a < xi, b < ys[u]) = prefix[u]
        tracker.offer(nn * xi * ys[u] - Int(prefix[u]) * scale, 1, t, u, 0);
      }

      while (inserted < n && order[inserted].first == xi) {
        ++rank_count[order[inserted].second];
        ++inserted;
      }

      // Closed side: both coordinates inclusive.
      prefix[0] = 0;
      for (std::size_t r = 0; r < ny; ++r) prefix[r + 1] = prefix[r] + rank_count[r];
      for (std::size_t u = 0; u < ny; ++u) {
        tracker.offer(Int(prefix[u + 1]) * scale - nn * xi * ys[u], 0, t, u, 0);
      }
    }
  }

  MaxTracker<Int> merged;
  for (const auto& r : results) merged.merge(r);
  return StarOutcome<Int>{merged.best, nn * scale, merged.where};
}

template <typename Int>
StarOutcome<Int> star_3d(const ScaledPoints<Int>& pts, std::size_t n) {
  const Int& L1 = pts.scale[0];
  const Int& L2 = pts.scale[1];
  const Int& L3 = pts.scale[2];
  const std::vector<Int> xs = sorted_corners(pts.coords[0], L1);
  const std::vector<Int> ys = sorted_corners(pts.coords[1], L2);
  const std::vector<Int> zs = sorted_corners(pts.coords[2], L3);
  const Int nn = Int(static_cast<long>(n));
  const Int scale = L1 * L2 * L3;

  struct P3 {
    Int a;
    Int b;
    std::size_t zrank;
  };
  std::vector<P3> order;
  order.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto zrank = static_cast<std::size_t>(
        std::lower_bound(zs.begin(), zs.end(), pts.coords[2][j]) - zs.begin());
    order.push_back(P3{pts.coords[0][j], pts.coords[1][j], zrank});
  }
  std::sort(order.begin(), order.end(),
            [](const P3& l, const P3& r) { return l.a < r.a || (l.a == r.a && l.b < r.b); });

  const std::size_t nz = zs.size();
  MaxTracker<Int> tracker;
  std::vector<long> rank_count(nz, 0);
  std::vector<long> prefix(nz + 1, 0);

  std::vector<const P3*> included;  // a <= xi (closed) or a < xi (open), sorted by b
  included.reserve(n);

  for (std::size_t t = 0; t < xs.size(); ++t) {
    const Int& xi = xs[t];
    for (const int side : {1, 0}) {
      // side 1: strict in every coordinate; side 0: inclusive everywhere.
      included.clear();
      for (const P3& p : order) {
        if (side == 1 ? p.a < xi : p.a <= xi) included.push_back(&p);
      }
      std::stable_sort(included.begin(), included.end(),
                       [](const P3* l, const P3* r) { return l->b < r->b; });

      std::fill(rank_count.begin(), rank_count.end(), 0);
      std::size_t next = 0;
      for (std::size_t u = 0; u < ys.size(); ++u) {
        const Int& eta = ys[u];
        while (next < included.size() &&
               (side == 1 ? included[next]->b < eta : included[next]->b <= eta)) {
          ++rank_count[included[next]->zrank];
          ++next;
        }
        prefix[0] = 0;
        for (std::size_t r = 0; r < nz; ++r) prefix[r + 1] = prefix[r] + rank_count[r];
        for (std::size_t w = 0; w < nz; ++w) {
          if (side == 1) {
            tracker.offer(nn * xi * eta * zs[w] - Int(prefix[w]) * scale, 1, t, u, w);
          } else {
            tracker.offer(Int(prefix[w + 1]) * scale - nn * xi * eta * zs[w], 0, t, u, w);
          }
        }
      }
    }
  }
  return StarOutcome<Int>{tracker.best, nn * scale, tracker.where};
}

int bit_size(const BigInt& v) {
  return v == 0 ? 0 : static_cast<int>(msb(v)) + 1;
}

}  // namespace

StarResult star_discrepancy_exact(const std::vector<std::vector<Rational>>& points,
                                  const StarOptions& options) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("star_discrepancy_exact: empty point set");
  const int s = static_cast<int>(points[0].size());
  if (s < 1) throw std::invalid_argument("star_discrepancy_exact: zero-dimensional points");
  if (s > 3) throw CapError("exact star discrepancy is limited to 3 dimensions");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != s) {
      throw std::invalid_argument("star_discrepancy_exact: ragged point set");
    }
    for (const Rational& x : p) {
      if (x < 0 || x >= 1) {
        throw std::invalid_argument("star_discrepancy_exact: coordinate outside [0, 1)");
      }
    }
  }
  const BigInt evals = pow_int(BigInt(n), static_cast<unsigned>(s)) * s;
  if (evals > BigInt(options.eval_cap)) {
    throw CapError("exact star discrepancy would need " + evals.str() +
                   " corner evaluations, above the cap of " + std::to_string(options.eval_cap));
  }

  const ScaledPoints<BigInt> wide = scale_points(points, s);

  // The integer kernel compares values bounded by N * prod(scale); use the
  // machine-word path whenever that fits comfortably in 64 bits.
  int bits = bit_size(BigInt(n));
  for (const BigInt& L : wide.scale) bits += bit_size(L);

  StarResult result;
  CornerBest where;
  if (bits <= 61) {
    const ScaledPoints<long long> pts = narrow_points<long long>(wide);
    StarOutcome<long long> out;
    if (s == 1) {
      out = star_1d(pts, n);
    } else if (s == 2) {
      out = star_2d(pts, n, options.parallel);
    } else {
      out = star_3d(pts, n);
    }
    result.value = Rational(BigInt(out.best), BigInt(out.denom));
    where = out.where;
  } else {
    StarOutcome<BigInt> out;
    if (s == 1) {
      out = star_1d(wide, n);
    } else if (s == 2) {
      out = star_2d(wide, n, options.parallel);
    } else {
      out = star_3d(wide, n);
    }
    result.value = Rational(out.best, out.denom);
    where = out.where;
  }

  // Reconstruct the witness corner in [0,1]^s from the stored indices.
  result.closed_side = where.side == 0;
  const std::vector<std::size_t> idx = {where.xi, where.yi, where.zi};
  for (int i = 0; i < s; ++i) {
    std::vector<BigInt> corners;
    for (const BigInt& v : wide.coords[static_cast<std::size_t>(i)]) corners.push_back(v);
    corners.push_back(wide.scale[static_cast<std::size_t>(i)]);
    std::sort(corners.begin(), corners.end());
    corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
    result.corner.push_back(Rational(corners.at(idx[static_cast<std::size_t>(i)]),
                                     wide.scale[static_cast<std::size_t>(i)]));
  }
  return result;
}

namespace reference {

Rational star_discrepancy_grid(const std::vector<std::vector<Rational>>& points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("star_discrepancy_grid: empty point set");
  const int s = static_cast<int>(points[0].size());

  std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    for (const auto& p : points) grid[static_cast<std::size_t>(i)].push_back(p[static_cast<std::size_t>(i)]);
    grid[static_cast<std::size_t>(i)].push_back(Rational(1));
    auto& g = grid[static_cast<std::size_t>(i)];
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }

  const Rational nn = Rational(BigInt(n));
  Rational best = 0;
  std::vector<std::size_t> corner(static_cast<std::size_t>(s), 0);
  while (true) {
    Rational volume = 1;
    for (int i = 0; i < s; ++i) {
      volume *= grid[static_cast<std::size_t>(i)][corner[static_cast<std::size_t>(i)]];
    }
    // Every open/closed combination per dimension; all are limits of boxes
    // with this volume.
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      BigInt count = 0;
      for (const auto& p : points) {
        bool in = true;
        for (int i = 0; i < s && in; ++i) {
          const Rational& edge = grid[static_cast<std::size_t>(i)][corner[static_cast<std::size_t>(i)]];
          const Rational& x = p[static_cast<std::size_t>(i)];
          in = (mask >> i) & 1u ? x <= edge : x < edge;
        }
        if (in) ++count;
      }
      const Rational cand = abs(Rational(count) / nn - volume);
      if (cand > best) best = cand;
    }

    int i = s - 1;
    for (; i >= 0; --i) {
      if (++corner[static_cast<std::size_t>(i)] < grid[static_cast<std::size_t>(i)].size()) break;
      corner[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return best;
}

Rational star_discrepancy_sorted_1d(std::vector<Rational> xs) {
  if (xs.empty()) throw std::invalid_argument("star_discrepancy_sorted_1d: empty point set");
  std::sort(xs.begin(), xs.end());
  const BigInt n(xs.size());
  Rational best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational up = Rational(BigInt(i + 1), n) - xs[i];
    const Rational down = xs[i] - Rational(BigInt(i), n);
    if (up > best) best = up;
    if (down > best) best = down;
  }
  return best;
}

}  // namespace reference

namespace {

BigInt congruence_hits(const BigInt& window_len, const BigInt& shift, const BigInt& modulus) {
  if (window_len <= shift) return 0;
  return floor_div(window_len - 1 - shift, modulus) + 1;
}

// Numerator of the anchored-box volume over the full modulus.
BigInt volume_numerator(const WitnessBoxes& boxes, const BigInt& full) {
  Rational volume = 1;
  for (const Rational& y : boxes.boundary()) volume *= y;
  const BigInt& den = denominator(volume);
  if (full % den != 0) throw std::logic_error("anchored volume denominator does not divide");
  return numerator(volume) * (full / den);
}

}  // namespace

Rational rho_fast(const WitnessPlan& plan, const WitnessBoxes& boxes, const MultiIndex& k,
                  const BigInt& window_len) {
  (void)plan;
  if (window_len < 0) throw std::invalid_argument("rho_fast: negative window length");
  const std::size_t flat = flat_index(k, boxes.m());
  const BigInt& modulus = boxes.box_moduli()[flat];
  const BigInt hits = congruence_hits(window_len, boxes.shifts()[flat], modulus);
  return Rational(hits) - Rational(window_len, modulus);
}

WindowedMax windowed_max_weighted_discrepancy(const WitnessPlan& plan, const WitnessBoxes& boxes,
                                              const BigInt& max_len,
                                              std::uint64_t iteration_cap, bool parallel) {
  if (max_len < 1) throw std::invalid_argument("windowed max: needs at least one window");
  if (max_len > BigInt(iteration_cap)) {
    throw CapError("windowed max over " + max_len.str() + " window lengths exceeds the cap of " +
                   std::to_string(iteration_cap));
  }
  const auto total = static_cast<std::int64_t>(max_len);
  const BigInt full = plan.full_modulus();
  const BigInt voln = volume_numerator(boxes, full);
  const std::size_t nboxes = boxes.box_moduli().size();

  struct Best {
    BigInt num = -1;
    std::int64_t len = 0;
  };

  int threads = 1;
#ifdef _OPENMP
  if (parallel && total >= 4096) threads = std::min(omp_get_max_threads(), 8);
#else
  (void)parallel;
#endif
  std::vector<Best> results(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    Best local;
    const std::int64_t lo = 1 + total * tid / threads;
    const std::int64_t hi = total * (tid + 1) / threads;
    for (std::int64_t len = lo; len <= hi; ++len) {
      BigInt hits = 0;
      for (std::size_t b = 0; b < nboxes; ++b) {
        hits += congruence_hits(BigInt(len), boxes.shifts()[b], boxes.box_moduli()[b]);
      }
      BigInt num = hits * full - BigInt(len) * voln;
      if (num < 0) num = -num;
      if (num > local.num || (num == local.num && len < local.len)) {
        local.num = std::move(num);
        local.len = len;
      }
    }
    results[static_cast<std::size_t>(tid)] = std::move(local);
  }

  Best best;
  for (Best& r : results) {
    if (r.num > best.num || (r.num == best.num && r.len != 0 && (best.len == 0 || r.len < best.len))) {
      best = std::move(r);
    }
  }
  return WindowedMax{Rational(best.num, full), BigInt(best.len)};
}

WindowedMax windowed_max_bruteforce(const WitnessPlan& plan, const WitnessBoxes& boxes,
                                    const BigInt& max_len, const BigInt& cap) {
  if (max_len < 1) throw std::invalid_argument("windowed max: needs at least one window");
  if (max_len > cap) {
    throw CapError("brute-force windowed max over " + max_len.str() +
                   " window lengths exceeds the cap " + cap.str());
  }
  const ExactPoint& x = boxes.start_point();
  const BigInt& v = boxes.start_index();
  if (horizon_capacity(x, v) < max_len) {
    throw HorizonError("windowed max enumeration overflows the working depth");
  }

  const auto total = static_cast<std::int64_t>(max_len);
  const int s = boxes.dimensions();
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(total), 0);

#pragma omp parallel for schedule(static) if (total >= 256)
  for (std::int64_t t = 0; t < total; ++t) {
    const ExactPoint pt = generalized_point(v + t, x, plan.permutations());
    bool in = true;
    for (int i = 0; i < s && in; ++i) {
      in = pt.value(i) < boxes.boundary()[static_cast<std::size_t>(i)];
    }
    inside[static_cast<std::size_t>(t)] = in ? 1 : 0;
  }

  const BigInt full = plan.full_modulus();
  const BigInt voln = volume_numerator(boxes, full);
  BigInt count = 0;
  BigInt best = -1;
  std::int64_t best_len = 0;
  for (std::int64_t t = 0; t < total; ++t) {
    count += inside[static_cast<std::size_t>(t)];
    const std::int64_t len = t + 1;
    BigInt num = count * full - BigInt(len) * voln;
    if (num < 0) num = -num;
    if (num > best) {
      best = std::move(num);
      best_len = len;
    }
  }
  return WindowedMax{Rational(best, full), BigInt(best_len)};
}

}  // namespace hx
