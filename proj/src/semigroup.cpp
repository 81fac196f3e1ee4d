#include "qfan/fan.hpp"
#include "qfan/linprog.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qfan {

namespace {

/* All points of N*Atilde with x0 <= bound, Atilde = {(1,0), (1,a_1), ..., (1,a_m)};
 * brute force over coefficient vectors with sum <= bound. */
std::set<IVec> semigroup_points(const FanData& fan, int bound)
{
    std::vector<IVec> stack = {IVec(fan.n + 1, Int(0))};
    for (int gen = 0; gen <= fan.m(); ++gen) {
        std::vector<IVec> next;
        for (const auto& base : stack) {
            IVec cur = base;
            while (cur[0] <= bound) {
                next.push_back(cur);
                cur[0] += 1;
                if (gen > 0)
                    for (int i = 0; i < fan.n; ++i) cur[i + 1] += fan.rays[gen - 1][i];
            }
        }
        stack = std::move(next);
    }
    return {stack.begin(), stack.end()};
}

}  // namespace

SemigroupReport semigroup_report(const FanData& fan, int bound)
{
    SemigroupReport rep;
    rep.bound = bound;
    rep.positive = true;
    rep.normal_up_to_K = true;
    rep.gorenstein_up_to_K = true;

    IMat gens = imat(fan.n + 1, fan.m() + 1);  // columns: (1,0), (1, a_i)
    gens[0][0] = 1;
    for (int j = 0; j < fan.m(); ++j) {
        gens[0][j + 1] = 1;
        for (int i = 0; i < fan.n; ++i) gens[i + 1][j + 1] = fan.rays[j][i];
    }
    IMat fan_gens = imat(fan.n, fan.m());
    for (int j = 0; j < fan.m(); ++j)
        for (int i = 0; i < fan.n; ++i) fan_gens[i][j] = fan.rays[j][i];

    const std::set<IVec> semi = semigroup_points(fan, bound);

    Int box = 0;
    for (const auto& ray : fan.rays)
        for (const auto& v : ray) box = std::max(box, v < 0 ? Int(-v) : v);

    for (Int x0 = 0; x0 <= bound; ++x0) {
        const Int lim = x0 * box;
        IVec y(fan.n, Int(0));
        std::function<void(int)> scan = [&](int pos) {
            if (pos < fan.n) {
                for (Int v = -lim; v <= lim; ++v) {
                    y[pos] = v;
                    scan(pos + 1);
                }
                return;
            }
            IVec pt(fan.n + 1);
            pt[0] = x0;
            for (int i = 0; i < fan.n; ++i) pt[i + 1] = y[i];

            /* membership in the cone C(Atilde): the boundary is the graph of the
             * gauge nu(y) = min sum(c) over y = sum c_i a_i, so the point lies in
             * the cone iff nu(y) <= x0 and in the interior iff nu(y) < x0. */
            auto nu = cone_gauge(fan_gens, y);
            if (!nu) return;  // y outside the support (cannot happen for complete fans)
            if (Rat(x0) < *nu) return;  // outside C(Atilde)

            if (x0 == 0) {
                bool zero = true;
                for (const auto& v : y) zero = zero && v == 0;
                if (!zero) rep.positive = false;
                return;
            }
            if (!semi.count(pt)) {
                rep.normal_up_to_K = false;
                rep.counterexamples.push_back(pt);
            }
            if (Rat(x0) > *nu) {  // interior point: Gorenstein shift by (1,0)
                IVec shifted = pt;
                shifted[0] -= 1;
                if (!semi.count(shifted)) {
                    rep.gorenstein_up_to_K = false;
                    rep.counterexamples.push_back(pt);
                }
            }
        };
        scan(0);
    }
    return rep;
}

}  // namespace qfan
