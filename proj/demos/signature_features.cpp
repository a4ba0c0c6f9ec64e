// Turn a sampled path into a fixed-size feature vector: signature level
// norms plus log-signature coordinates in the Lyndon basis. Reads a CSV path
// when given one, otherwise uses a short Brownian sample.
//
//   signature_features [path.csv [level]]
#include "roughsig/roughsig.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace roughsig;

int main(int argc, char** argv) {
    int level = argc > 2 ? std::atoi(argv[2]) : 4;
    PathSamples x;
    if (argc > 1) {
        x = read_path_csv_file(argv[1]);
        std::printf("path: %s, %zu samples, dimension %d\n", argv[1], x.size(), x.dim());
    } else {
        GenSpec spec;
        spec.d = 2;
        spec.n = 512;
        spec.seed = 7;
        x = sample_bm(spec);
        std::printf("path: Brownian sample, %zu points, dimension %d\n", x.size(), x.dim());
    }

    TruncatedTensor sig = signature(x, level);
    std::printf("signature to level %d, grouplike defect %.2e\n", level,
                grouplike_defect(sig));
    for (int k = 1; k <= level; ++k) {
        double norm = 0.0;
        for (double c : sig.levels[static_cast<std::size_t>(k)]) norm += c * c;
        std::printf("  level %d  |S^%d| = %.6f\n", k, k, std::sqrt(norm));
    }

    LyndonBasis basis(x.dim(), level);
    LogSignature ls = log_signature(sig, basis);
    std::printf("log-signature (Lyndon coordinates, residual %.2e):\n", ls.residual);
    for (int k = 1; k <= level; ++k) {
        std::printf("  level %d:", k);
        for (const auto& [w, c] : ls.coords[static_cast<std::size_t>(k)])
            std::printf("  [%s] %+.5f", format_word(w).c_str(), c);
        std::printf("\n");
    }

    // the five largest signature entries, a compact fingerprint of the path
    std::vector<std::pair<double, std::string>> top;
    for (int k = 1; k <= level; ++k)
        for (std::size_t i = 0; i < sig.levels[static_cast<std::size_t>(k)].size(); ++i)
            top.push_back({std::abs(sig.levels[static_cast<std::size_t>(k)][i]),
                           format_word(index_to_word(i, k, x.dim()))});
    std::sort(top.rbegin(), top.rend());
    std::printf("largest coefficients:");
    for (std::size_t i = 0; i < top.size() && i < 5; ++i)
        std::printf("  %s (%.4f)", top[i].second.c_str(), top[i].first);
    std::printf("\n");
    return 0;
}
