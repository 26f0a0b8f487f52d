// Minimal Nelder-Mead simplex minimizer used by the positivity refutation
// heuristic. Internal header.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace qdmap::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> start, double step, std::size_t max_iter,
                             double ftol) {
    const std::size_t d = start.size();
    std::vector<std::vector<double>> simplex(d + 1, start);
    for (std::size_t i = 0; i < d; ++i)
        simplex[i + 1][i] += step;
    std::vector<double> fv(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        fv[i] = f(simplex[i]);

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), trial(d), trial2(d);
    for (std::size_t it = 0; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[d - 1];
        if (fv[worst] - fv[best] < ftol)
            break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < d; ++i)
                centroid[i] += simplex[order[k]][i] / static_cast<double>(d);

        auto along = [&](double coef, std::vector<double>& out) {
            for (std::size_t i = 0; i < d; ++i)
                out[i] = centroid[i] + coef * (simplex[worst][i] - centroid[i]);
            return f(out);
        };

        const double fr = along(-1.0, trial);
        if (fr < fv[best]) {
            const double fe = along(-2.0, trial2);
            if (fe < fr) {
                simplex[worst] = trial2;
                fv[worst] = fe;
            } else {
                simplex[worst] = trial;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = trial;
            fv[worst] = fr;
        } else {
            const double fc = along(0.5, trial2);
            if (fc < fv[worst]) {
                simplex[worst] = trial2;
                fv[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= d; ++k) {
                    if (k == best)
                        continue;
                    for (std::size_t i = 0; i < d; ++i)
                        simplex[k][i] = simplex[best][i] + 0.5 * (simplex[k][i] - simplex[best][i]);
                    fv[k] = f(simplex[k]);
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    return {simplex[best], fv[best]};
}

} // namespace qdmap::detail
