#pragma once

#include "nscm/model.hpp"

namespace nscm {

// Interventions over every subset of the endogenous variables and every value
// tuple, in canonical order: subsets by (size, lexicographic), values
// lexicographic. fn may return void or bool (false stops the walk).
template <typename Fn>
void for_each_intervention(const Signature& sig, Fn&& fn) {
    const int n = sig.endo_count();
    auto run = [&](const Intervention& i) {
        if constexpr (std::is_void_v<decltype(fn(i))>) {
            fn(i);
            return true;
        } else {
            return fn(i);
        }
    };
    for (int k = 0; k <= n; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Intervention iv;
            iv.assignments.resize(k);
            for (int i = 0; i < k; ++i) iv.assignments[i] = {sig.endo_var(idx[i]), 0};
            while (true) {  // odometer over values
                if (!run(iv)) return;
                int pos = k - 1;
                while (pos >= 0) {
                    if (++iv.assignments[pos].second < sig.range_size(iv.assignments[pos].first))
                        break;
                    iv.assignments[pos].second = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
            if (k == 0) break;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
}

// Number of (subset, value tuple) combinations: prod over V of (1 + |R(X)|).
inline double intervention_space_size(const Signature& sig) {
    double total = 1.0;
    for (int i = 0; i < sig.endo_count(); ++i)
        total *= 1.0 + static_cast<double>(sig.range_size(sig.endo_var(i)));
    return total;
}

inline double context_space_size(const Signature& sig) {
    double total = 1.0;
    for (int i = 0; i < sig.exo_count(); ++i) total *= static_cast<double>(sig.range_size(i));
    return total;
}

}  // namespace nscm
