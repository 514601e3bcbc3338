#include <doctest.h>

#include <sstream>

#include "hyperlab/pattern.hpp"
#include "hyperlab/random_gen.hpp"

using namespace hyperlab;

namespace {

Pattern p2(std::initializer_list<std::pair<int, int>> entries, int m = 2, int n = 2) {
    Pattern p(m, n);
    for (auto [i, j] : entries) p.insert(i, j);
    return p;
}

// Every pattern on a 3x3 grid, by support mask.
Pattern pattern_from_mask(std::uint32_t mask, int m, int n) {
    Pattern p(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if ((mask >> (i * n + j)) & 1u) p.insert(i, j);
    return p;
}

} // namespace

TEST_CASE("lattice meet and join") {
    const Pattern a = p2({{0, 0}, {0, 1}});
    const Pattern b = p2({{0, 1}, {1, 1}});
    CHECK(meet(a, b) == p2({{0, 1}}));
    CHECK(join(a, b) == p2({{0, 0}, {0, 1}, {1, 1}}));
    CHECK(lattice_combine(LatticeOp::Meet, a, b) == meet(a, b));

    const Pattern full = Pattern::full(2, 2);
    CHECK(meet(a, full) == a);
    CHECK(join(a, Pattern(2, 2)) == a);

    CHECK_THROWS_AS(meet(a, Pattern(3, 3)), DimensionMismatch);
}

TEST_CASE("complement is an involution") {
    CHECK(complement(Pattern::diagonal(2)) == p2({{0, 1}, {1, 0}}));
    CHECK(complement(Pattern::full(3, 4)) == Pattern(3, 4));
    const Pattern k = random_pattern(11, 5, 7, 0.4);
    CHECK(complement(complement(k)) == k);
}

TEST_CASE("boolean lattice laws on random patterns") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int m = 2 + static_cast<int>(seed % 7);
        const int n = 2 + static_cast<int>((seed / 7) % 7);
        const Pattern a = random_pattern(splitmix64(seed), m, n, 0.45);
        const Pattern b = random_pattern(splitmix64(seed ^ 0xabc), m, n, 0.5);
        const Pattern c = random_pattern(splitmix64(seed ^ 0xdef), m, n, 0.55);
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(a, meet(b, c)) == meet(meet(a, b), c));
        CHECK(join(a, join(b, c)) == join(join(a, b), c));
        CHECK(meet(a, join(a, b)) == a);
        CHECK(join(a, meet(a, b)) == a);
        CHECK(complement(meet(a, b)) == join(complement(a), complement(b)));
        CHECK(complement(join(a, b)) == meet(complement(a), complement(b)));
    }
}

TEST_CASE("block decomposition of simple patterns") {
    const auto diag = block_decompose(Pattern::diagonal(2));
    REQUIRE(std::holds_alternative<BlockDecomposition>(diag));
    CHECK(std::get<BlockDecomposition>(diag).blocks.size() == 2);

    const auto full = block_decompose(Pattern::full(2, 2));
    REQUIRE(std::holds_alternative<BlockDecomposition>(full));
    CHECK(std::get<BlockDecomposition>(full).blocks.size() == 1);
    CHECK(std::get<BlockDecomposition>(full).blocks[0].row_count() == 2);

    const auto zig = block_decompose(p2({{0, 0}, {0, 1}, {1, 0}}));
    REQUIRE(std::holds_alternative<ZigzagWitness>(zig));
    const auto w = std::get<ZigzagWitness>(zig);
    const Pattern p = p2({{0, 0}, {0, 1}, {1, 0}});
    CHECK(p.contains(w.i, w.j));
    CHECK(p.contains(w.i2, w.j));
    CHECK(p.contains(w.i2, w.j2));
    CHECK(!p.contains(w.i, w.j2));
}

TEST_CASE("ternary recognition matches block decomposition on all 3x3 patterns") {
    for (std::uint32_t mask = 0; mask < 512; ++mask) {
        const Pattern p = pattern_from_mask(mask, 3, 3);
        const bool ternary = is_ternary(p);
        const bool decomposes = std::holds_alternative<BlockDecomposition>(block_decompose(p));
        CHECK(ternary == decomposes);
        if (decomposes) {
            // The blocks partition the support.
            const auto result = block_decompose(p);
            const auto& blocks = std::get<BlockDecomposition>(result).blocks;
            std::size_t covered = 0;
            for (const auto& r : blocks) {
                covered += static_cast<std::size_t>(r.row_count() * r.col_count());
                for (int i : r.row_indices())
                    for (int j : r.col_indices()) CHECK(p.contains(i, j));
            }
            CHECK(covered == p.support_size());
        }
    }
}

TEST_CASE("ternary examples") {
    CHECK(is_ternary(Pattern::diagonal(3)));
    CHECK(is_ternary(Pattern::full(3, 3)));
    CHECK(!is_ternary(p2({{0, 0}, {0, 1}, {1, 0}})));
}

TEST_CASE("kron support and dimensions") {
    const Pattern d = Pattern::diagonal(2);
    const Pattern f = Pattern::full(2, 2);
    const Pattern k = kron(d, f);
    CHECK(k.rows() == 4);
    CHECK(k.support_size() == d.support_size() * f.support_size());
    // Block diagonal: entries only inside the two diagonal 2x2 blocks.
    for (auto [i, j] : k.entries()) CHECK(i / 2 == j / 2);

    CHECK(kron(d, Pattern::full(1, 1)) == d);

    const Pattern contractive = p2({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 3, 3);
    CHECK(is_ternary(kron(contractive, Pattern::full(3, 3))));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Pattern a = random_pattern(seed, 3, 4, 0.5);
        const Pattern b = random_pattern(seed ^ 0x77, 4, 3, 0.5);
        CHECK(kron(a, b).support_size() == a.support_size() * b.support_size());
    }
}

TEST_CASE("subset lattice maps") {
    const std::vector<Pattern> family = {random_pattern(1, 3, 3, 0.5),
                                         random_pattern(2, 3, 3, 0.5),
                                         random_pattern(3, 3, 3, 0.5)};
    auto [phi_all, psi_none] = subset_lattice_maps(family, 0b111);
    CHECK(phi_all == meet(meet(family[0], family[1]), family[2]));
    CHECK(psi_none == Pattern(3, 3));

    auto [phi_none, psi_all] = subset_lattice_maps(family, 0);
    CHECK(phi_none == Pattern::full(3, 3));
    CHECK(psi_all == join(join(family[0], family[1]), family[2]));

    auto [phi_1, psi_2] = subset_lattice_maps(std::span(family.data(), 2), 0b01);
    CHECK(phi_1 == family[0]);
    CHECK(psi_2 == family[1]);
}

TEST_CASE("pattern text round trip") {
    const Pattern p = random_pattern(5, 4, 6, 0.4);
    std::stringstream ss;
    write_pattern(ss, p);
    CHECK(read_pattern(ss) == p);
}

TEST_CASE("pattern dense format and comments") {
    std::stringstream ss("# header comment\n2 3\ndense\n101\n010\n");
    const Pattern p = read_pattern(ss);
    CHECK(p.contains(0, 0));
    CHECK(p.contains(0, 2));
    CHECK(p.contains(1, 1));
    CHECK(p.support_size() == 3);

    std::stringstream sparse("3 3  # dims\n1 1\n3 2  # entry\n");
    const Pattern q = read_pattern(sparse);
    CHECK(q.contains(0, 0));
    CHECK(q.contains(2, 1));
    CHECK(q.support_size() == 2);

    std::stringstream bad("2 2\n3 1\n");
    CHECK_THROWS_AS(read_pattern(bad), ParseError);
}

TEST_CASE("pattern invariants") {
    CHECK_THROWS_AS(Pattern(0, 3), DimensionMismatch);
    CHECK_THROWS_AS(Pattern(3, 100), DimensionMismatch);
    Pattern p(2, 2);
    CHECK_THROWS_AS(p.insert(2, 0), DimensionMismatch);
    p.insert(1, 1);
    p.insert(1, 1);
    CHECK(p.support_size() == 1);  // support is a set
}
