#include "cq/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cq/detail/eval.hpp"
#include "cq/threads.hpp"

namespace cq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One slot's candidate grid, stored column-wise and sorted by abscissa.
struct Candidates {
  Side side = Side::S1;
  std::vector<double> t;     // side parameter
  std::vector<double> x;
  std::vector<double> y2;
  std::vector<double> r2;
  std::vector<double> phi0;  // rho antiderivative at 0
  std::vector<double> phiL;  // rho antiderivative at L

  int size() const { return static_cast<int>(t.size()); }
};

Candidates build_candidates(const TriangleConfig& cfg, Side side, double t_lo, double t_hi,
                            int count) {
  struct Raw {
    double x, y, t;
  };
  std::vector<Raw> raw;
  raw.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? t_lo : t_lo + (t_hi - t_lo) * i / (count - 1);
    const Point2 p = cfg.position_on(side, t);
    raw.push_back({p.x, p.y, t});
  }
  std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.x < b.x; });

  const double L = cfg.base_length();
  Candidates c;
  c.side = side;
  c.t.reserve(count);
  for (const Raw& r : raw) {
    const double y2 = r.y * r.y;
    c.t.push_back(r.t);
    c.x.push_back(r.x);
    c.y2.push_back(y2);
    c.r2.push_back(r.x * r.x + y2);
    c.phi0.push_back(detail::rho_antiderivative(0.0, r.x, y2));
    c.phiL.push_back(detail::rho_antiderivative(L, r.x, y2));
  }
  return c;
}

struct SlotsCtx {
  std::array<const Candidates*, 4> cand{};
  std::array<bool, 4> same_as_prev{};  // slot shares its side grid with the previous slot
  int K = 0;
  double L = 0.0;
};

struct Incumbent {
  double value = kInf;  // unweighted accumulated integral
  std::array<int, 4> idx{-1, -1, -1, -1};
};

struct WalkState {
  double prev_x = 0.0, prev_y2 = 0.0, prev_r2 = 0.0;
  double lo = 0.0, acc = 0.0, phi_prev_lo = 0.0;
};

/// Depth-first enumeration of ordered tuples with the running clamped-walk
/// state hoisted, so the innermost level costs one cut and two antiderivative
/// evaluations per tuple.
template <int K, int Depth>
void scan_rec(const SlotsCtx& ctx, int start, int end, const WalkState& st, Incumbent& inc,
              std::array<int, 4>& idx) {
  const Candidates& c = *ctx.cand[Depth];
  const double* tx = c.x.data();
  const double* ty2 = c.y2.data();
  const double* tr2 = c.r2.data();
  const double L = ctx.L;

  if constexpr (Depth == K - 1) {
    const double* phiL = c.phiL.data();
    if constexpr (K == 1) {
      const double* phi0 = c.phi0.data();
      for (int i = start; i < end; ++i) {
        const double val = phiL[i] - phi0[i];
        if (val < inc.value) {
          idx[Depth] = i;
          inc.value = val;
          inc.idx = idx;
        }
      }
    } else {
      const double base = st.acc - st.phi_prev_lo;
      for (int i = start; i < end; ++i) {
        const double qx = tx[i];
        const double cut =
            qx > st.prev_x ? (tr2[i] - st.prev_r2) / (2.0 * (qx - st.prev_x)) : st.lo;
        const double hi = std::clamp(cut, st.lo, L);
        const double dp = hi - st.prev_x;
        const double dq = hi - qx;
        const double val =
            base + (dp * dp * dp / 3.0 + st.prev_y2 * hi) + phiL[i] - (dq * dq * dq / 3.0 + ty2[i] * hi);
        if (val < inc.value) {
          idx[Depth] = i;
          inc.value = val;
          inc.idx = idx;
        }
      }
    }
  } else {
    for (int i = start; i < end; ++i) {
      WalkState ns;
      const double qx = tx[i];
      if constexpr (Depth == 0) {
        ns.prev_x = qx;
        ns.prev_y2 = ty2[i];
        ns.prev_r2 = tr2[i];
        ns.lo = 0.0;
        ns.acc = 0.0;
        ns.phi_prev_lo = c.phi0[i];
      } else {
        const double cut =
            qx > st.prev_x ? (tr2[i] - st.prev_r2) / (2.0 * (qx - st.prev_x)) : st.lo;
        const double hi = std::clamp(cut, st.lo, L);
        const double dp = hi - st.prev_x;
        ns.acc = st.acc + (dp * dp * dp / 3.0 + st.prev_y2 * hi) - st.phi_prev_lo;
        const double dq = hi - qx;
        ns.phi_prev_lo = dq * dq * dq / 3.0 + ty2[i] * hi;
        ns.lo = hi;
        ns.prev_x = qx;
        ns.prev_y2 = ty2[i];
        ns.prev_r2 = tr2[i];
      }
      idx[Depth] = i;
      const auto& nc = *ctx.cand[Depth + 1];
      const int nstart = ctx.same_as_prev[Depth + 1] ? i + 1 : 0;
      scan_rec<K, Depth + 1>(ctx, nstart, nc.size(), ns, inc, idx);
    }
  }
}

void scan_range(const SlotsCtx& ctx, int begin, int end, Incumbent& inc) {
  std::array<int, 4> idx{-1, -1, -1, -1};
  const WalkState st{};
  switch (ctx.K) {
    case 1: scan_rec<1, 0>(ctx, begin, end, st, inc, idx); break;
    case 2: scan_rec<2, 0>(ctx, begin, end, st, inc, idx); break;
    case 3: scan_rec<3, 0>(ctx, begin, end, st, inc, idx); break;
    case 4: scan_rec<4, 0>(ctx, begin, end, st, inc, idx); break;
    default: throw std::logic_error("oracle: unsupported slot count");
  }
}

void merge_incumbent(Incumbent& best, const Incumbent& cand) {
  if (cand.value < best.value) best = cand;
}

Incumbent scan_allocation(const SlotsCtx& ctx) {
  const int G0 = ctx.cand[0]->size();
  const int chunks = std::min(G0, std::max(1, 16 * worker_count()));
  std::vector<Incumbent> per(chunks);
  parallel_chunks(G0, chunks, [&](int c, std::int64_t b, std::int64_t e) {
    scan_range(ctx, static_cast<int>(b), static_cast<int>(e), per[c]);
  });
  Incumbent best;
  for (const auto& inc : per) merge_incumbent(best, inc);
  return best;
}

/// Generic slow scan: independent candidate list per slot, tuples evaluated
/// by sorting the points and walking. Used for apexes outside the base span
/// (where side abscissa ranges interleave) and as the refinement fallback.
struct SlowSlot {
  const Candidates* cand;
  bool same_as_prev;
};

void slow_scan_rec(const std::vector<SlowSlot>& slots, double L, size_t depth, int start,
                   std::vector<int>& idx, std::array<detail::EvalPoint<double>, 4>& pts,
                   double& best_value, std::vector<int>& best_idx) {
  const Candidates& c = *slots[depth].cand;
  for (int i = start; i < c.size(); ++i) {
    pts[depth] = detail::EvalPoint<double>{c.x[i], c.y2[i], c.r2[i]};
    idx[depth] = i;
    if (depth + 1 == slots.size()) {
      std::array<detail::EvalPoint<double>, 4> sorted = pts;
      std::sort(sorted.begin(), sorted.begin() + slots.size(),
                [](const auto& a, const auto& b) { return a.x < b.x; });
      const double val =
          detail::walk_distortion(sorted.data(), static_cast<int>(slots.size()), L);
      if (val < best_value) {
        best_value = val;
        best_idx = idx;
      }
    } else {
      const int nstart = slots[depth + 1].same_as_prev ? i + 1 : 0;
      slow_scan_rec(slots, L, depth + 1, nstart, idx, pts, best_value, best_idx);
    }
  }
}

struct ScanOutcome {
  std::vector<double> params;  // slot order
  double value = kInf;         // weighted distortion
};

ScanOutcome scan_initial(const Allocation& alloc, const Candidates& s1, const Candidates& s2,
                         const TriangleConfig& cfg, bool interior_apex) {
  const int K = alloc.total();
  ScanOutcome out;
  if (interior_apex) {
    SlotsCtx ctx;
    ctx.K = K;
    ctx.L = cfg.base_length();
    for (int k = 0; k < K; ++k) {
      ctx.cand[k] = k < alloc.ell ? &s1 : &s2;
      ctx.same_as_prev[k] = k > 0 && ctx.cand[k] == ctx.cand[k - 1];
    }
    const Incumbent inc = scan_allocation(ctx);
    if (inc.value == kInf) return out;
    out.value = inc.value / cfg.base_length();
    for (int k = 0; k < K; ++k) out.params.push_back(ctx.cand[k]->t[inc.idx[k]]);
    return out;
  }
  std::vector<SlowSlot> slots;
  for (int k = 0; k < K; ++k) {
    const Candidates* c = k < alloc.ell ? &s1 : &s2;
    slots.push_back({c, k > 0 && slots.back().cand == c});
  }
  std::vector<int> idx(K), best_idx(K, -1);
  std::array<detail::EvalPoint<double>, 4> pts{};
  double best_value = kInf;
  slow_scan_rec(slots, cfg.base_length(), 0, 0, idx, pts, best_value, best_idx);
  if (best_idx[0] < 0) return out;
  out.value = best_value;
  for (int k = 0; k < K; ++k) out.params.push_back(slots[k].cand->t[best_idx[k]]);
  return out;
}

/// One refinement round: per-slot windows around the incumbent, chain DP over
/// consecutive-pair junction terms (exact whenever the winner's cuts are
/// monotone, which a clamped-walk re-evaluation verifies; mismatches fall
/// back to brute enumeration of the same windows).
void refine_round(const std::vector<Side>& slot_sides, const TriangleConfig& cfg, double width,
                  int resolution, std::vector<double>& params, double& value) {
  const int K = static_cast<int>(slot_sides.size());
  const double L = cfg.base_length();

  std::vector<Candidates> slots;
  slots.reserve(K);
  for (int k = 0; k < K; ++k) {
    const double lo = std::max(0.0, params[k] - width / 2.0);
    const double hi = std::min(1.0, params[k] + width / 2.0);
    slots.push_back(build_candidates(cfg, slot_sides[k], lo, hi, resolution));
  }
  const int G = resolution;

  // Chain decomposition: V * L = -phi_0(0) + sum_k [phi_k(c_k) - phi_{k+1}(c_k)]
  // + phi_last(L) with c_k the clamped cut of the consecutive pair.
  std::vector<double> dp(slots[0].phi0.size());
  for (int i = 0; i < G; ++i) dp[i] = -slots[0].phi0[i];
  std::vector<std::vector<int>> parent(K);
  for (int k = 0; k + 1 < K; ++k) {
    const Candidates& a = slots[k];
    const Candidates& b = slots[k + 1];
    std::vector<double> ndp(G, kInf);
    parent[k + 1].assign(G, -1);
    for (int j = 0; j < G; ++j) {
      const double qx = b.x[j];
      const double qy2 = b.y2[j];
      const double qr2 = b.r2[j];
      double best = kInf;
      int arg = -1;
      for (int i = 0; i < G; ++i) {
        if (!(qx > a.x[i])) continue;  // x-order between consecutive slots
        const double cut = std::clamp((qr2 - a.r2[i]) / (2.0 * (qx - a.x[i])), 0.0, L);
        const double da = cut - a.x[i];
        const double db = cut - qx;
        const double j_cost =
            (da * da * da / 3.0 + a.y2[i] * cut) - (db * db * db / 3.0 + qy2 * cut);
        const double tot = dp[i] + j_cost;
        if (tot < best) {
          best = tot;
          arg = i;
        }
      }
      ndp[j] = best;
      parent[k + 1][j] = arg;
    }
    dp = std::move(ndp);
  }

  double dp_best = kInf;
  int dp_arg = -1;
  for (int j = 0; j < G; ++j) {
    const double tot = dp[j] + slots[K - 1].phiL[j];
    if (tot < dp_best) {
      dp_best = tot;
      dp_arg = j;
    }
  }
  if (dp_arg < 0) return;  // no x-ordered tuple in the windows; keep incumbent

  std::vector<int> pick(K);
  pick[K - 1] = dp_arg;
  for (int k = K - 1; k > 0; --k) pick[k - 1] = parent[k][pick[k]];

  std::array<detail::EvalPoint<double>, 4> pts{};
  for (int k = 0; k < K; ++k)
    pts[k] = detail::EvalPoint<double>{slots[k].x[pick[k]], slots[k].y2[pick[k]],
                                       slots[k].r2[pick[k]]};
  const double walk = detail::walk_distortion(pts.data(), K, L);
  const double dp_weighted = dp_best / L;

  if (std::abs(walk - dp_weighted) > 1e-10 * std::max(1.0, std::abs(walk))) {
    // The chain undervalued an inverted-cut tuple; redo the round honestly.
    std::vector<SlowSlot> sslots;
    for (int k = 0; k < K; ++k) sslots.push_back({&slots[k], false});
    std::vector<int> idx(K), best_idx(K, -1);
    std::array<detail::EvalPoint<double>, 4> buf{};
    double best_value = kInf;
    slow_scan_rec(sslots, L, 0, 0, idx, buf, best_value, best_idx);
    if (best_idx[0] >= 0 && best_value < value) {
      value = best_value;
      for (int k = 0; k < K; ++k) params[k] = slots[k].t[best_idx[k]];
    }
    return;
  }
  if (walk < value) {
    value = walk;
    for (int k = 0; k < K; ++k) params[k] = slots[k].t[pick[k]];
  }
}

void validate_spec(const GridSpec& spec) {
  if (spec.resolution < 10) throw std::invalid_argument("GridSpec: resolution must be >= 10");
  if (spec.refine_rounds < 0) throw std::invalid_argument("GridSpec: refine_rounds must be >= 0");
  if (!(spec.refine_shrink > 0.0 && spec.refine_shrink < 1.0))
    throw std::invalid_argument("GridSpec: refine_shrink must lie in (0, 1)");
}

GridSearchResult search(const std::vector<Allocation>& allocations, const TriangleConfig& cfg,
                        const GridSpec& spec) {
  validate_spec(spec);
  const Candidates s1 = build_candidates(cfg, Side::S1, 0.0, 1.0, spec.resolution);
  const Candidates s2 = build_candidates(cfg, Side::S2, 0.0, 1.0, spec.resolution);
  const bool interior = cfg.apex().x > 0.0 && cfg.apex().x < cfg.base_length();

  GridSearchResult result;
  int best_at = -1;
  for (const Allocation& alloc : allocations) {
    ScanOutcome out = scan_initial(alloc, s1, s2, cfg, interior);
    result.allocation_bests.push_back({alloc, out.params, out.value});
    if (best_at < 0 || out.value < result.allocation_bests[best_at].value)
      best_at = static_cast<int>(result.allocation_bests.size()) - 1;
  }
  const AllocationIncumbent& inc = result.allocation_bests[best_at];

  std::vector<Side> slot_sides;
  for (int k = 0; k < inc.alloc.total(); ++k)
    slot_sides.push_back(k < inc.alloc.ell ? Side::S1 : Side::S2);

  std::vector<double> params = inc.params;
  double value = inc.value;
  double width = 1.0;
  for (int round = 0; round < spec.refine_rounds; ++round) {
    width *= spec.refine_shrink;
    refine_round(slot_sides, cfg, width, spec.resolution, params, value);
  }

  std::vector<ConstraintPoint> pts;
  for (int k = 0; k < inc.alloc.total(); ++k) pts.push_back(cfg.point(slot_sides[k], params[k]));

  SolveResult& best = result.best;
  best.allocation = inc.alloc;
  best.point_params = params;
  best.codebook = Codebook(std::move(pts));
  best.distortion = distortion(best.codebook, cfg);
  best.provenance = Provenance::Oracle;
  best.iterations = spec.refine_rounds;
  best.residual = std::pow(spec.refine_shrink, spec.refine_rounds) / (spec.resolution - 1);
  if (cfg.is_symmetric()) {
    const Allocation mirror = inc.alloc.mirrored();
    for (const auto& other : result.allocation_bests)
      if (!(other.alloc == inc.alloc) && other.alloc == mirror &&
          std::abs(other.value - inc.value) <= 1e-8)
        best.mirror = true;
  }
  return result;
}

}  // namespace

GridSearchResult grid_search_detailed(int n, const TriangleConfig& cfg, const GridSpec& spec) {
  if (n < 1 || n > 3) throw std::invalid_argument("grid_search: n must be 1, 2 or 3");
  std::vector<Allocation> allocations;
  for (int ell = n; ell >= 0; --ell) allocations.push_back(Allocation{ell, n - ell});
  return search(allocations, cfg, spec);
}

SolveResult grid_search(int n, const TriangleConfig& cfg, const GridSpec& spec) {
  return grid_search_detailed(n, cfg, spec).best;
}

GridSearchResult restricted_grid_search_detailed(int n, Side side, const TriangleConfig& cfg,
                                                 const GridSpec& spec) {
  if (n < 1 || n > 4) throw std::invalid_argument("restricted_grid_search: n must be in 1..4");
  const Allocation alloc = side == Side::S1 ? Allocation{n, 0} : Allocation{0, n};
  return search({alloc}, cfg, spec);
}

SolveResult restricted_grid_search(int n, Side side, const TriangleConfig& cfg,
                                   const GridSpec& spec) {
  return restricted_grid_search_detailed(n, side, cfg, spec).best;
}

}  // namespace cq
