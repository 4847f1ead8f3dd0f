#include "core/piecewise.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "core/errors.hpp"

namespace gu {

Rat PLFunction::value_at(const Rat& s) const {
    if (s < breaks.front() || s > breaks.back())
        fail("E_RANGE", "parameter outside the reconstructed segment",
             nlohmann::json{{"s", rat_str(s)}});
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        if (s > breaks[k + 1]) continue;
        const Rat span = breaks[k + 1] - breaks[k];
        return values[k] + (values[k + 1] - values[k]) * (s - breaks[k]) / span;
    }
    return values.back();
}

Rat PLFunction::slope_after(size_t piece) const {
    return (values[piece + 1] - values[piece]) /
           (breaks[piece + 1] - breaks[piece]);
}

namespace {

// Shared exact evaluations along one segment.
struct SegmentEval {
    const Evaluator& ev;
    WeightVector t0, dir;  // t(s) = t0 + s * dir
    std::map<Rat, std::pair<std::vector<Rat>, std::vector<Rat>>> cache;
    std::mutex mu;

    SegmentEval(const Evaluator& e, const WeightVector& a, const WeightVector& b)
        : ev(e), t0(a) {
        for (size_t i = 0; i < a.size(); ++i) dir.push_back(b[i] - a[i]);
    }

    WeightVector point(const Rat& s) const {
        WeightVector t = t0;
        for (size_t i = 0; i < t.size(); ++i) t[i] += s * dir[i];
        return t;
    }

    // (upsilon values, generator gradings) at s.
    const std::pair<std::vector<Rat>, std::vector<Rat>>& at(const Rat& s) {
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = cache.find(s);
            if (it != cache.end()) return it->second;
        }
        const WeightVector t = point(s);
        auto value = std::make_pair(ev.upsilon_at(t), ev.gr_at(t));
        std::lock_guard<std::mutex> lock(mu);
        return cache.emplace(s, std::move(value)).first->second;
    }

    std::vector<Rat> upsilon(const Rat& s) { return at(s).first; }

    // Candidate slopes on [a, b]: difference quotients of generator gradings.
    std::set<Rat> candidate_slopes(const Rat& a, const Rat& b) {
        const auto& ga = at(a).second;
        const auto& gb = at(b).second;
        std::set<Rat> out;
        for (size_t g = 0; g < ga.size(); ++g)
            out.insert((gb[g] - ga[g]) / (b - a));
        return out;
    }
};

struct Certifier {
    SegmentEval& seg;
    int n_indices;

    // True when every component is collinear over [a, b] with both
    // half-interval slopes among the candidates.
    bool certify(const Rat& a, const Rat& b, std::vector<int>* failed = nullptr) {
        const Rat m = (a + b) / 2;
        const auto va = seg.upsilon(a);
        const auto vb = seg.upsilon(b);
        const auto vm = seg.upsilon(m);
        const auto cl = seg.candidate_slopes(a, m);
        const auto cr = seg.candidate_slopes(m, b);
        bool ok = true;
        for (int q = 0; q < n_indices; ++q) {
            const bool collinear = 2 * vm[q] == va[q] + vb[q];
            const Rat sl = (vm[q] - va[q]) / (m - a);
            const Rat sr = (vb[q] - vm[q]) / (b - m);
            const bool good = collinear && cl.count(sl) && cr.count(sr);
            if (!good) {
                ok = false;
                if (failed) failed->push_back(q);
            }
        }
        return ok;
    }

    // Candidate interior breakpoints of [a, b]: intersections of one
    // candidate slope line through (a, v(a)) with another through (b, v(b)).
    std::vector<Rat> candidate_splits(const Rat& a, const Rat& b,
                                      const std::vector<int>& failed) {
        const Rat m = (a + b) / 2;
        std::set<Rat> la = seg.candidate_slopes(a, m);
        std::set<Rat> lb = seg.candidate_slopes(m, b);
        for (const Rat& s : seg.candidate_slopes(a, b)) {
            la.insert(s);
            lb.insert(s);
        }
        const auto va = seg.upsilon(a);
        const auto vb = seg.upsilon(b);
        std::set<Rat> splits;
        for (int q : failed)
            for (const Rat& sa : la)
                for (const Rat& sb : lb) {
                    if (sa == sb) continue;
                    // v(a) + sa (s - a) = v(b) - sb (b - s)
                    const Rat s = (vb[q] - va[q] + sa * a - sb * b) / (sa - sb);
                    if (s > a && s < b) splits.insert(s);
                    if (splits.size() >= 64) break;
                }
        return {splits.begin(), splits.end()};
    }

    // Certified sample points over [a, b]; appends interior+right endpoints.
    void build(const Rat& a, const Rat& b, int depth, int max_depth,
               std::vector<Rat>& points, std::set<int>& uncertified) {
        std::vector<int> failed;
        if (certify(a, b, &failed)) {
            points.push_back(b);
            return;
        }
        if (depth >= max_depth) {
            for (int q : failed) uncertified.insert(q);
            points.push_back(b);
            return;
        }
        // Prefer an exactly verified candidate breakpoint (captures
        // non-dyadic corners); fall back to the midpoint.
        Rat split = (a + b) / 2;
        for (const Rat& s : candidate_splits(a, b, failed)) {
            if (certify(a, s) && certify(s, b)) {
                split = s;
                break;
            }
        }
        build(a, split, depth + 1, max_depth, points, uncertified);
        build(split, b, depth + 1, max_depth, points, uncertified);
    }
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Warms the evaluation cache at evenly spaced parameters in parallel.
void prewarm(SegmentEval& seg, int threads) {
    constexpr int kSamples = 17;  // s = k/16
    std::vector<Rat> ss;
    for (int k = 0; k < kSamples; ++k) ss.push_back(Rat(k) / 16);
    const int workers = std::min(threads, kSamples);
    if (workers <= 1) {
        for (const auto& s : ss) seg.at(s);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const size_t k = next.fetch_add(1);
                if (k >= ss.size()) return;
                try {
                    seg.at(ss[k]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<PLFunction> reconstruct_segment(const Evaluator& ev,
                                            const WeightVector& t0,
                                            const WeightVector& t1,
                                            const ReconstructOptions& opts) {
    SegmentEval seg(ev, t0, t1);
    seg.at(Rat(0));  // validates t0 (E_NOT_IN_POLYTOPE/E_RANK) before threading
    seg.at(Rat(1));
    prewarm(seg, resolve_threads(opts.threads));

    Certifier cert{seg, ev.upsilon_len};
    std::vector<Rat> points{Rat(0)};
    std::set<int> uncertified;
    cert.build(Rat(0), Rat(1), 0, opts.max_depth, points, uncertified);

    std::vector<PLFunction> out(ev.upsilon_len);
    for (int q = 0; q < ev.upsilon_len; ++q) {
        PLFunction& f = out[q];
        f.index = q;
        f.certified = !uncertified.count(q);
        for (const Rat& s : points) {
            const Rat v = seg.upsilon(s)[q];
            const size_t k = f.breaks.size();
            // Merge a collinear continuation into the previous piece.
            if (k >= 2) {
                const Rat prev_span = f.breaks[k - 1] - f.breaks[k - 2];
                const Rat prev_slope = (f.values[k - 1] - f.values[k - 2]) / prev_span;
                const Rat slope = (v - f.values[k - 1]) / (s - f.breaks[k - 1]);
                if (slope == prev_slope) {
                    f.breaks[k - 1] = s;
                    f.values[k - 1] = v;
                    continue;
                }
            }
            f.breaks.push_back(s);
            f.values.push_back(v);
        }
    }
    return out;
}

namespace {

void require_theta_edges(const Evaluator& ev, int min_edges, const char* what) {
    if (!ev.complex.graph.is_theta() ||
        static_cast<int>(ev.complex.graph.kappa()) < min_edges)
        fail("E_SHAPE_MISMATCH",
             std::string(what) +
                 " requires a theta complex with at least " +
                 std::to_string(min_edges) + " edge(s)",
             nlohmann::json{{"kappa", ev.complex.graph.kappa()}});
}

// t^i_a: a on every edge except i, which balances to 2 - (n-1) a.
WeightVector line_point(int n, int i, const Rat& a) {
    WeightVector t(n, a);
    t[i - 1] = 2 - (n - 1) * a;
    return t;
}

}  // namespace

JumpValue jump_delta_i(const Evaluator& ev, int i, const Rat& a,
                       const ReconstructOptions& opts) {
    require_theta_edges(ev, 2, "jump computation");
    const int n = static_cast<int>(ev.complex.graph.kappa());
    if (i < 1 || i > n)
        fail("E_INDEX", "edge index out of range",
             nlohmann::json{{"i", i}, {"kappa", n}});
    const Rat amax = Rat(2) / (n - 1);
    if (!(a > 0 && a < amax))
        fail("E_BOUNDARY",
             "the jump is defined only in the interior of the line",
             nlohmann::json{{"a", rat_str(a)}, {"max", rat_str(amax)}});

    Rat eps = amax / 64;
    for (int attempt = 0; attempt < 4; ++attempt, eps /= 4) {
        const Rat el = std::min(eps, Rat(a / 2));
        const Rat er = std::min(eps, Rat((amax - a) / 2));
        const auto left =
            reconstruct_segment(ev, line_point(n, i, a - el), line_point(n, i, a), opts);
        const auto right =
            reconstruct_segment(ev, line_point(n, i, a), line_point(n, i, a + er), opts);
        if (!left[0].certified || !right[0].certified) continue;
        const Rat sl = left[0].slope_after(left[0].breaks.size() - 2) / el;
        const Rat sr = right[0].slope_after(0) / er;
        return {i, a, sr - sl};
    }
    fail("E_UNCERTIFIED",
         "no bracket around the jump point could be certified within the "
         "depth budget",
         nlohmann::json{{"i", i}, {"a", rat_str(a)}});
}

std::vector<std::vector<std::pair<bool, Rat>>> tau_matrix(
    const Evaluator& ev, const ReconstructOptions& opts) {
    if (!ev.complex.graph.is_theta())
        fail("E_SHAPE_MISMATCH", "the tau matrix requires a theta complex",
             nlohmann::json{{"kappa", ev.complex.graph.kappa()}});
    const int n = static_cast<int>(ev.complex.graph.kappa());
    std::vector<std::vector<std::pair<bool, Rat>>> out(
        n, std::vector<std::pair<bool, Rat>>(n, {false, Rat(0)}));

    // One reconstruction per vertex pair covers both one-sided derivatives:
    // the edge from vertex t^i to vertex t^j is s -> t^i + 2 s V^i_j.
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            WeightVector ti(n, Rat(0)), tj(n, Rat(0));
            ti[i - 1] = 2;
            tj[j - 1] = 2;
            const auto fs = reconstruct_segment(ev, ti, tj, opts);
            if (!fs[0].certified)
                fail("E_UNCERTIFIED",
                     "the edge reconstruction between matching vertices could "
                     "not be certified",
                     nlohmann::json{{"i", i}, {"j", j}});
            out[i - 1][j - 1] = {true, fs[0].slope_after(0) / 2};
            out[j - 1][i - 1] = {
                true, -fs[0].slope_after(fs[0].breaks.size() - 2) / 2};
        }
    return out;
}

std::vector<Rat> f_i_components(const Evaluator& ev, int i, int K,
                                const ReconstructOptions& opts) {
    require_theta_edges(ev, 2, "jump homomorphism components");
    if (K < 1)
        fail("E_RANGE", "the number of components must be positive",
             nlohmann::json{{"K", K}});
    const int n = static_cast<int>(ev.complex.graph.kappa());
    std::vector<Rat> out;
    for (int k = 1; k <= K; ++k) {
        const long denom = (2L * k + 1) * (n - 1);
        const Rat a = Rat(2) / denom;
        out.push_back(jump_delta_i(ev, i, a, opts).delta / denom);
    }
    return out;
}

}  // namespace gu
