#include "hyperlab/random_gen.hpp"

#include <random>

namespace hyperlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(master) ^ fnv1a64(tag)) + trial);
}

CMatrix random_operator(std::uint64_t seed, int m, int n, const std::string& distribution) {
    if (m < 1 || n < 1) throw Error("random_operator: dimensions must be positive");
    if (distribution == "zero") return CMatrix::Zero(m, n);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto gaussian_matrix = [&](int r, int c) {
        CMatrix t(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                t(i, j) = std::complex<double>(re, im);
            }
        return t;
    };

    if (distribution == "gaussian") return gaussian_matrix(m, n);
    if (distribution == "sparse") {
        CMatrix t = gaussian_matrix(m, n);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (unif(rng) < 0.75) t(i, j) = 0.0;
        return t;
    }
    if (distribution == "unitary") {
        const int k = std::min(m, n);
        CMatrix g = gaussian_matrix(std::max(m, n), k);
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ() * CMatrix::Identity(std::max(m, n), k);
        // Fix the phase so the result is a deterministic function of g.
        CMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        for (int j = 0; j < k; ++j) {
            const std::complex<double> d = r(j, j);
            const double ad = std::abs(d);
            if (ad > 0) q.col(j) *= d / ad;
        }
        CMatrix t = CMatrix::Zero(m, n);
        if (m >= n)
            t = q;
        else
            t = q.transpose();
        return t;
    }
    throw Error("random_operator: unknown distribution '" + distribution + "'");
}

Pattern random_pattern(std::uint64_t seed, int m, int n, double density) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Pattern p(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (unif(rng) < density) p.insert(i, j);
    return p;
}

Pattern random_contractive_pattern(std::uint64_t seed, int m, int n) {
    std::mt19937_64 rng(seed);
    const int blocks = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(m, n)));
    // Block 0 means "unused"; ensure block 1 is hit by both sides.
    std::vector<int> row_block(static_cast<std::size_t>(m)), col_block(static_cast<std::size_t>(n));
    for (int i = 0; i < m; ++i)
        row_block[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(blocks + 1));
    for (int j = 0; j < n; ++j)
        col_block[static_cast<std::size_t>(j)] = static_cast<int>(rng() % static_cast<std::uint64_t>(blocks + 1));
    row_block[static_cast<std::size_t>(static_cast<int>(rng() % static_cast<std::uint64_t>(m)))] = 1;
    col_block[static_cast<std::size_t>(static_cast<int>(rng() % static_cast<std::uint64_t>(n)))] = 1;
    Pattern p(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (row_block[static_cast<std::size_t>(i)] != 0 &&
                row_block[static_cast<std::size_t>(i)] == col_block[static_cast<std::size_t>(j)])
                p.insert(i, j);
    return p;
}

} // namespace hyperlab
