#include "freechaos/partitions.hpp"

#include <algorithm>
#include <set>

namespace freechaos {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;  // exact at every step
    }
    return result;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }
double to_double(const Rational& v) { return v.convert_to<double>(); }

Rational rational_from_string(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }),
            s.end());
    if (s.empty()) throw DomainError("empty numeric literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    bool negative = false;
    size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';

    BigInt mantissa = 0;
    long frac_digits = 0;
    long exponent = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (in_fraction) ++frac_digits;
            any_digit = true;
        } else if (c == '.' && !in_fraction) {
            in_fraction = true;
        } else if (c == 'e' || c == 'E') {
            try {
                size_t used = 0;
                exponent = std::stol(s.substr(pos + 1), &used);
                if (used != s.size() - pos - 1) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw DomainError("malformed exponent in '" + text + "'");
            }
            pos = s.size() - 1;
        } else {
            throw DomainError("malformed numeric literal '" + text + "'");
        }
    }
    if (!any_digit) throw DomainError("malformed numeric literal '" + text + "'");

    Rational value(mantissa);
    const long net = exponent - frac_digits;
    BigInt scale = 1;
    for (long i = 0; i < (net < 0 ? -net : net); ++i) scale *= 10;
    if (net >= 0)
        value *= Rational(scale);
    else
        value /= Rational(scale);
    return negative ? Rational(-value) : value;
}

Partition Partition::from_blocks(int ground_size, std::vector<std::vector<int>> blocks) {
    if (ground_size < 1) throw DomainError("partition ground size must be positive");
    std::set<int> seen;
    for (auto& b : blocks) {
        if (b.empty()) throw DomainError("partition blocks must be non-empty");
        std::sort(b.begin(), b.end());
        for (int e : b) {
            if (e < 1 || e > ground_size)
                throw DomainError("partition element " + std::to_string(e) + " outside ground set");
            if (!seen.insert(e).second)
                throw DomainError("partition blocks are not disjoint at element " + std::to_string(e));
        }
    }
    if (static_cast<int>(seen.size()) != ground_size)
        throw DomainError("partition blocks do not cover the ground set");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return Partition{ground_size, std::move(blocks)};
}

bool Partition::has_singleton() const {
    return std::any_of(blocks.begin(), blocks.end(),
                       [](const auto& b) { return b.size() == 1; });
}

bool is_noncrossing(const Partition& p) {
    const auto& bs = p.blocks;
    for (size_t a = 0; a < bs.size(); ++a) {
        for (size_t b = a + 1; b < bs.size(); ++b) {
            // Two blocks cross iff their merged sequence alternates at least
            // four times: x..y..x..y.
            size_t ia = 0, ib = 0;
            int runs = 0;
            int last = -1;  // 0 = from block a, 1 = from block b
            while (ia < bs[a].size() || ib < bs[b].size()) {
                int side;
                if (ib == bs[b].size() || (ia < bs[a].size() && bs[a][ia] < bs[b][ib])) {
                    side = 0;
                    ++ia;
                } else {
                    side = 1;
                    ++ib;
                }
                if (side != last) {
                    ++runs;
                    last = side;
                }
            }
            if (runs >= 4) return false;
        }
    }
    return true;
}

BigInt catalan(unsigned m) { return binomial(2 * m, m) / (m + 1); }

BigInt riordan(unsigned m) {
    // R_m = sum_j binom(m, j) (-1)^(m-j) C_j, the inversion of
    // C_m = sum_j binom(m, j) R_j.
    BigInt sum = 0;
    for (unsigned j = 0; j <= m; ++j) {
        const BigInt term = binomial(m, j) * catalan(j);
        if ((m - j) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

BigInt riordan_refined(int m, int j) {
    if (m < 1 || m > kMaxEnumeratedGround || j < 1 || j > m)
        throw BoundsError("riordan_refined requires 1 <= j <= m <= " +
                          std::to_string(kMaxEnumeratedGround));
    BigInt count = 0;
    for_each_noncrossing(m, [&](const std::vector<std::vector<int>>& blocks) {
        if (static_cast<int>(blocks.size()) != j) return;
        for (const auto& b : blocks)
            if (b.size() == 1) return;
        ++count;
    });
    return count;
}

std::vector<Partition> enumerate_nc(int m) {
    std::vector<Partition> out;
    for_each_noncrossing(m, [&](const std::vector<std::vector<int>>& blocks) {
        out.push_back(Partition{m, blocks});
    });
    return out;
}

CountTable CountTable::build(int max_m) {
    if (max_m < 0 || max_m > kMaxEnumeratedGround)
        throw BoundsError("CountTable requires 0 <= max_m <= " +
                          std::to_string(kMaxEnumeratedGround));
    CountTable t;
    t.max_m = max_m;
    t.catalan.resize(static_cast<size_t>(max_m) + 1);
    t.riordan.resize(static_cast<size_t>(max_m) + 1);
    t.refined.resize(static_cast<size_t>(max_m) + 1);
    for (int m = 0; m <= max_m; ++m) {
        t.catalan[static_cast<size_t>(m)] = freechaos::catalan(static_cast<unsigned>(m));
        t.riordan[static_cast<size_t>(m)] = freechaos::riordan(static_cast<unsigned>(m));
        t.refined[static_cast<size_t>(m)].assign(static_cast<size_t>(m) + 1, BigInt(0));
        if (m >= 1) {
            // One streaming pass counts the whole refined row.
            for_each_noncrossing(m, [&](const std::vector<std::vector<int>>& blocks) {
                for (const auto& b : blocks)
                    if (b.size() == 1) return;
                t.refined[static_cast<size_t>(m)][blocks.size()] += 1;
            });
        }
    }
    return t;
}

}  // namespace freechaos
