#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "freechaos/errors.hpp"
#include "freechaos/kernel.hpp"

namespace freechaos {

// Level-truncated vector of the full Fock space over a d-dimensional base
// space.  Components are indexed by words over {1..d}; the empty word is the
// vacuum.  Words are packed base (d+1), first letter least significant, so
// prepending a letter is a single multiply-add and numeric order refines word
// length.  Sparse and immutable; exact zeros are never stored.
template <class S>
class FockVector {
public:
    using Word = unsigned __int128;
    using Entry = std::pair<Word, S>;

    FockVector() = default;

    static FockVector vacuum(int dim, int max_level) {
        FockVector v(dim, max_level);
        v.entries_.emplace_back(Word(0), S(1));
        return v;
    }

    static FockVector zero(int dim, int max_level) { return FockVector(dim, max_level); }

    static FockVector from_entries(int dim, int max_level, std::vector<Entry> entries) {
        FockVector v(dim, max_level);
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (auto& [w, amp] : entries) {
            if (word_length(w, dim) > max_level)
                throw CapacityError("word exceeds the vector's level bound");
            if (!v.entries_.empty() && v.entries_.back().first == w)
                v.entries_.back().second += amp;
            else
                v.entries_.emplace_back(w, amp);
        }
        v.drop_zeros();
        return v;
    }

    int dim() const { return dim_; }
    int max_level() const { return max_level_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    S amplitude(Word w) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), w,
                                   [](const Entry& e, Word v) { return e.first < v; });
        return (it != entries_.end() && it->first == w) ? it->second : S(0);
    }

    // Longest stored word; words compare shorter-before-longer numerically.
    int max_word_length() const {
        return entries_.empty() ? 0 : word_length(entries_.back().first, dim_);
    }

    static int word_length(Word w, int dim) {
        const auto base = static_cast<unsigned>(dim) + 1;
        int len = 0;
        while (w != 0) {
            ++len;
            w /= base;
        }
        return len;
    }

    // letters are 1-based basis indices, first letter first.
    static Word word_from_letters(const std::vector<int>& letters, int dim) {
        const auto base = static_cast<unsigned>(dim) + 1;
        Word w = 0;
        for (size_t i = letters.size(); i-- > 0;) {
            if (letters[i] < 1 || letters[i] > dim)
                throw DomainError("word letter outside 1..d");
            w = w * base + static_cast<unsigned>(letters[i]);
        }
        return w;
    }

private:
    FockVector(int dim, int max_level) : dim_(dim), max_level_(max_level) {
        if (dim < 1) throw DomainError("Fock base dimension must be positive");
        if (max_level < 0) throw DomainError("Fock level bound must be non-negative");
        // The packed encoding must fit 128 bits.
        Word probe = 1;
        const auto base = static_cast<unsigned>(dim) + 1;
        for (int i = 0; i < max_level; ++i) {
            if (probe > (~Word(0)) / base / base)
                throw CapacityError("level bound exceeds the word encoding");
            probe *= base;
        }
    }

    void drop_zeros() {
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                      [](const Entry& e) {
                                          return ScalarTraits<S>::is_zero(e.second);
                                      }),
                       entries_.end());
    }

    template <class T>
    friend FockVector<T> create(int, const FockVector<T>&);
    template <class T>
    friend FockVector<T> annihilate(int, const FockVector<T>&);
    template <class T>
    friend FockVector<T> add(const FockVector<T>&, const FockVector<T>&);
    template <class T>
    friend FockVector<T> scale(const T&, const FockVector<T>&);
    template <class T>
    friend FockVector<T> prune_above(const FockVector<T>&, int);

    int dim_ = 1;
    int max_level_ = 0;
    std::vector<Entry> entries_;
};

// Prepends letter i (1-based); words that would exceed the level bound are
// dropped, as the free creation operator is truncated at the top level.
template <class S>
FockVector<S> create(int i, const FockVector<S>& v) {
    if (i < 1 || i > v.dim()) throw DomainError("basis index outside 1..d");
    const auto base = static_cast<typename FockVector<S>::Word>(v.dim() + 1);
    FockVector<S> out = FockVector<S>::zero(v.dim(), v.max_level());
    out.entries_.reserve(v.entries().size());
    for (const auto& [w, amp] : v.entries()) {
        if (FockVector<S>::word_length(w, v.dim()) >= v.max_level()) continue;
        out.entries_.emplace_back(w * base + static_cast<unsigned>(i), amp);
    }
    return out;
}

// Removes a leading letter i; words not starting with i (and the vacuum) are
// annihilated.
template <class S>
FockVector<S> annihilate(int i, const FockVector<S>& v) {
    if (i < 1 || i > v.dim()) throw DomainError("basis index outside 1..d");
    const auto base = static_cast<typename FockVector<S>::Word>(v.dim() + 1);
    FockVector<S> out = FockVector<S>::zero(v.dim(), v.max_level());
    for (const auto& [w, amp] : v.entries())
        if (w != 0 && w % base == static_cast<unsigned>(i))
            out.entries_.emplace_back(w / base, amp);
    return out;
}

template <class S>
FockVector<S> add(const FockVector<S>& a, const FockVector<S>& b) {
    if (a.dim() != b.dim() || a.max_level() != b.max_level())
        throw ShapeError("Fock vectors live in different truncations");
    FockVector<S> out = FockVector<S>::zero(a.dim(), a.max_level());
    size_t i = 0, j = 0;
    const auto& ae = a.entries();
    const auto& be = b.entries();
    while (i < ae.size() || j < be.size()) {
        typename FockVector<S>::Word w;
        S val;
        if (j == be.size() || (i < ae.size() && ae[i].first < be[j].first)) {
            w = ae[i].first;
            val = ae[i++].second;
        } else if (i == ae.size() || be[j].first < ae[i].first) {
            w = be[j].first;
            val = be[j++].second;
        } else {
            w = ae[i].first;
            val = ae[i++].second + be[j++].second;
        }
        if (!ScalarTraits<S>::is_zero(val)) out.entries_.emplace_back(w, val);
    }
    return out;
}

template <class S>
FockVector<S> scale(const S& alpha, const FockVector<S>& v) {
    FockVector<S> out = FockVector<S>::zero(v.dim(), v.max_level());
    if (ScalarTraits<S>::is_zero(alpha)) return out;
    out.entries_.reserve(v.entries().size());
    for (const auto& [w, amp] : v.entries()) {
        const S scaled = alpha * amp;
        if (!ScalarTraits<S>::is_zero(scaled)) out.entries_.emplace_back(w, scaled);
    }
    return out;
}

template <class S>
FockVector<S> prune_above(const FockVector<S>& v, int max_len) {
    FockVector<S> out = FockVector<S>::zero(v.dim(), v.max_level());
    for (const auto& [w, amp] : v.entries())
        if (FockVector<S>::word_length(w, v.dim()) <= max_len) out.entries_.emplace_back(w, amp);
    return out;
}

// <a, b> = sum conj(a) b.
template <class S>
S fock_inner(const FockVector<S>& a, const FockVector<S>& b) {
    if (a.dim() != b.dim()) throw ShapeError("Fock vectors have different base dimensions");
    S sum(0);
    size_t i = 0, j = 0;
    const auto& ae = a.entries();
    const auto& be = b.entries();
    while (i < ae.size() && j < be.size()) {
        if (ae[i].first < be[j].first)
            ++i;
        else if (be[j].first < ae[i].first)
            ++j;
        else
            sum += ScalarTraits<S>::conj(ae[i++].second) * be[j++].second;
    }
    return sum;
}

namespace detail {

// Applies I(f) restricted to the coefficient block [base, base + d^order) of
// the kernel's entry list.  The operator is peeled one slot at a time:
//   I(e_i (x) g) = (create_i + annihilate_i) I(g) - I(e_i c_1 g),
// where e_i c_1 g is the slice of g at leading index i.
//
// `cap` is the largest word length this node's output needs to carry: the
// slots still pending above a node change word length by one each, so a word
// of length > cap here can never shrink back under the caller's bound.
template <class S>
FockVector<S> apply_block(const Tensor<S>& f,
                          typename std::vector<typename Tensor<S>::Entry>::const_iterator lo,
                          typename std::vector<typename Tensor<S>::Entry>::const_iterator hi,
                          int order, FlatIndex base, const FockVector<S>& v, int cap) {
    if (lo == hi) return FockVector<S>::zero(v.dim(), v.max_level());
    if (order == 0) {
        const FockVector<S> scaled = scale(lo->second, v);
        return scaled.max_word_length() > cap ? prune_above(scaled, cap) : scaled;
    }

    const int d = f.dim();
    const FlatIndex block = flat_pow(d, order - 1);
    FockVector<S> result = FockVector<S>::zero(v.dim(), v.max_level());
    auto it = lo;
    for (int i = 0; i < d && it != hi; ++i) {
        const FlatIndex sub_base = base + static_cast<unsigned>(i) * block;
        auto sub_hi = std::lower_bound(it, hi, sub_base + block,
                                       [](const auto& e, FlatIndex val) { return e.first < val; });
        if (it == sub_hi) {
            it = sub_hi;
            continue;
        }
        const FockVector<S> u = apply_block(f, it, sub_hi, order - 1, sub_base, v, cap + 1);
        FockVector<S> raised = create(i + 1, u);
        if (raised.max_word_length() > cap) raised = prune_above(raised, cap);
        result = add(result, add(std::move(raised), annihilate(i + 1, u)));
        if (order >= 2) {
            // slice of f^{(i)} at leading index i again
            const FlatIndex diag_base = sub_base + static_cast<unsigned>(i) * flat_pow(d, order - 2);
            auto diag_lo = std::lower_bound(it, sub_hi, diag_base,
                                            [](const auto& e, FlatIndex val) { return e.first < val; });
            auto diag_hi = std::lower_bound(diag_lo, sub_hi, diag_base + flat_pow(d, order - 2),
                                            [](const auto& e, FlatIndex val) { return e.first < val; });
            if (diag_lo != diag_hi) {
                const FockVector<S> corr =
                    apply_block(f, diag_lo, diag_hi, order - 2, diag_base, v, cap);
                result = add(result, scale(S(-1), corr));
            }
        }
        it = sub_hi;
    }
    return result;
}

}  // namespace detail

// Applies the Wigner integral operator I(f) to v.  Never truncates silently:
// the caller's level bound must accommodate every word the application can
// produce.
template <class S>
FockVector<S> wigner_apply(const Tensor<S>& f, const FockVector<S>& v) {
    if (f.dim() != v.dim()) throw ShapeError("kernel and Fock vector dimensions differ");
    if (v.max_word_length() + f.order() > v.max_level())
        throw CapacityError("level bound too small for this application");
    return detail::apply_block(f, f.entries().begin(), f.entries().end(), f.order(), FlatIndex(0),
                               v, v.max_level());
}

// Vacuum expectation <Omega, I(f)^m Omega>.  Words that can no longer reach
// the vacuum within the remaining applications are pruned, inside the
// application as well as between applications, which keeps the result exact.
// level defaults to q*m, the smallest sufficient bound.
template <class S>
S oracle_moment(const Tensor<S>& f, int m, int level = -1) {
    if (m < 1) throw DomainError("moment order must be positive");
    const int q = f.order();
    if (level < 0) level = q * m;
    if (level < q * m) throw CapacityError("level bound below q*m");

    FockVector<S> v = FockVector<S>::vacuum(f.dim(), level);
    for (int k = 1; k <= m; ++k) {
        if (v.max_word_length() + q > level)
            throw CapacityError("level bound too small for this application");
        v = detail::apply_block(f, f.entries().begin(), f.entries().end(), q, FlatIndex(0), v,
                                q * (m - k));
        v = prune_above(v, q * (m - k));
    }
    return v.amplitude(typename FockVector<S>::Word(0));
}

}  // namespace freechaos
