#pragma once

#include <utility>
#include <vector>

#include "freechaos/errors.hpp"
#include "freechaos/numeric.hpp"

namespace freechaos {

// Largest ground size for which non-crossing partitions are enumerated
// explicitly (C_14 = 2,674,440 objects keeps filtered counting cheap).
inline constexpr int kMaxEnumeratedGround = 14;

// A set partition of {1..m}.  Canonical form: blocks ordered by their minimum
// element, elements ascending inside each block.
struct Partition {
    int ground_size = 0;
    std::vector<std::vector<int>> blocks;

    // Validates disjointness/coverage and brings the blocks to canonical form.
    static Partition from_blocks(int ground_size, std::vector<std::vector<int>> blocks);

    bool has_singleton() const;
    bool operator==(const Partition& other) const = default;
};

// True iff no p1 < q1 < p2 < q2 exists with p1,p2 in one block and q1,q2 in a
// different block.
bool is_noncrossing(const Partition& p);

BigInt catalan(unsigned m);  // binom(2m, m) / (m+1), exact
BigInt riordan(unsigned m);  // binomial inversion of the Catalan sequence

// Count of non-crossing partitions of [m] with exactly j blocks and no
// singleton blocks.  Computed by filtered enumeration, hence m <= 14.
BigInt riordan_refined(int m, int j);

// Streams every non-crossing partition of {1..m} in lexicographic order of
// the canonical block form, without materializing the list.  The visitor
// receives the canonical blocks; the reference is invalidated on return.
//
// Generation follows the first-block decomposition: the block containing the
// segment minimum splits the remainder into independent segments.
template <class Visitor>
void for_each_noncrossing(int m, Visitor&& visit) {
    if (m < 1 || m > kMaxEnumeratedGround)
        throw BoundsError("non-crossing enumeration requires 1 <= m <= " +
                          std::to_string(kMaxEnumeratedGround) + ", got " + std::to_string(m));

    std::vector<std::pair<int, int>> pending{{1, m}};  // back() = next segment
    std::vector<std::vector<int>> acc;
    std::vector<std::vector<int>> block_pool(static_cast<size_t>(m) + 1);

    auto rec = [&](auto&& self, int depth) -> void {
        if (pending.empty()) {
            visit(std::as_const(acc));
            return;
        }
        const auto [lo, hi] = pending.back();
        pending.pop_back();

        std::vector<int>& blk = block_pool[static_cast<size_t>(depth)];
        blk.assign(1, lo);

        // Emit the current first block, then extend it with larger elements in
        // ascending order; this produces canonical forms in lexicographic order.
        auto grow = [&](auto&& grow_self, int last) -> void {
            acc.push_back(blk);
            const size_t base = pending.size();
            if (blk.back() < hi) pending.emplace_back(blk.back() + 1, hi);
            for (size_t i = blk.size(); i-- > 1;)
                if (blk[i - 1] + 1 < blk[i]) pending.emplace_back(blk[i - 1] + 1, blk[i] - 1);
            self(self, depth + 1);
            pending.resize(base);
            acc.pop_back();

            for (int e = last + 1; e <= hi; ++e) {
                blk.push_back(e);
                grow_self(grow_self, e);
                blk.pop_back();
            }
        };
        grow(grow, lo);

        pending.emplace_back(lo, hi);
    };
    rec(rec, 0);
}

// Materialized enumeration (1 <= m <= 14), lexicographic canonical order.
std::vector<Partition> enumerate_nc(int m);

// Catalan/Riordan numbers plus the refined triangle up to max_m, exact.
struct CountTable {
    int max_m = 0;
    std::vector<BigInt> catalan;                 // C_0..C_max_m
    std::vector<BigInt> riordan;                 // R_0..R_max_m
    std::vector<std::vector<BigInt>> refined;    // refined[m][j], valid for 1 <= j <= m

    static CountTable build(int max_m);          // max_m <= 14
};

}  // namespace freechaos
