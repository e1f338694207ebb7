#include "hmcusp/smith.hpp"

#include <cstdlib>

namespace hmcusp {

SmithResult smith_normal_form(std::vector<std::vector<Int>> M) {
    SmithResult out;
    if (M.empty() || M[0].empty()) return out;
    const long rows = static_cast<long>(M.size());
    const long cols = static_cast<long>(M[0].size());
    auto abs_ = [](const Int& x) { return x < 0 ? Int(-x) : x; };

    long t = 0;
    while (t < rows && t < cols) {
        // locate the smallest nonzero entry in the remaining block
        long pi = -1, pj = -1;
        for (long i = t; i < rows; ++i)
            for (long j = t; j < cols; ++j)
                if (M[i][j] != 0 &&
                    (pi < 0 || abs_(M[i][j]) < abs_(M[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // block is zero
        std::swap(M[t], M[pi]);
        for (long i = 0; i < rows; ++i) std::swap(M[i][t], M[i][pj]);

        bool clean = true;
        for (long i = t + 1; i < rows; ++i)
            if (M[i][t] % M[t][t] != 0) clean = false;
        for (long j = t + 1; j < cols; ++j)
            if (M[t][j] % M[t][t] != 0) clean = false;
        if (!clean) {
            // one round of reduction, then retry the pivot search
            for (long i = t + 1; i < rows; ++i) {
                Int q = M[i][t] / M[t][t];
                if (q != 0)
                    for (long j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
            }
            for (long j = t + 1; j < cols; ++j) {
                Int q = M[t][j] / M[t][t];
                if (q != 0)
                    for (long i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
            }
            continue;
        }
        // clear the cross exactly
        for (long i = t + 1; i < rows; ++i) {
            Int q = M[i][t] / M[t][t];
            for (long j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        }
        for (long j = t + 1; j < cols; ++j) {
            Int q = M[t][j] / M[t][t];
            for (long i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        }
        // enforce the divisibility chain into the remaining block
        bool divides_rest = true;
        for (long i = t + 1; i < rows && divides_rest; ++i)
            for (long j = t + 1; j < cols && divides_rest; ++j)
                if (M[i][j] % M[t][t] != 0) {
                    for (long jj = t; jj < cols; ++jj) M[t][jj] += M[i][jj];
                    divides_rest = false;
                }
        if (!divides_rest) continue;
        ++t;
    }

    for (long i = 0; i < t; ++i) out.invariants.push_back(abs_(M[i][i]));
    out.rank = t;
    return out;
}

}  // namespace hmcusp
