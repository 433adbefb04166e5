#pragma once

#include <algorithm>
#include <complex>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "freechaos/errors.hpp"
#include "freechaos/numeric.hpp"

namespace freechaos {

// Flat row-major rank of a multi-index; 128 bits cover every feasible
// order/dimension combination (order * log2(dim) is validated <= 120).
using FlatIndex = unsigned __int128;

namespace detail {

inline FlatIndex flat_pow(int dim, int exponent) {
    FlatIndex v = 1;
    for (int i = 0; i < exponent; ++i) {
        if (v > (~FlatIndex(0)) / static_cast<unsigned>(dim))
            throw ShapeError("tensor index space exceeds 128 bits");
        v *= static_cast<unsigned>(dim);
    }
    return v;
}

inline FlatIndex reverse_digits(FlatIndex v, int count, int dim) {
    FlatIndex out = 0;
    const auto d = static_cast<unsigned>(dim);
    for (int i = 0; i < count; ++i) {
        out = out * d + v % d;
        v /= d;
    }
    return out;
}

}  // namespace detail

// Dense-semantics tensor of order q over a d-element orthonormal basis,
// stored as coordinates sorted by flat index (zero entries omitted).  The
// coordinate form keeps contractions of large structured kernels feasible;
// desk-scale dense kernels hit a dense-accumulator fast path.
//
// Immutable after construction; multi-indices are 0-based in memory (the text
// format is 1-based).
template <class S>
class Tensor {
public:
    using Scalar = S;
    using Real = RealOf<S>;
    using Entry = std::pair<FlatIndex, S>;

    Tensor() = default;

    Tensor(int order, int dim) : order_(order), dim_(dim) { validate_shape(); }

    static Tensor from_entries(int order, int dim, std::vector<Entry> entries) {
        Tensor t(order, dim);
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (auto& [idx, val] : entries) {
            if (idx >= t.logical_size()) throw ShapeError("tensor entry index out of range");
            if (!t.entries_.empty() && t.entries_.back().first == idx)
                t.entries_.back().second += val;
            else
                t.entries_.emplace_back(idx, val);
        }
        t.drop_zeros();
        return t;
    }

    static Tensor from_dense(int order, int dim, const std::vector<S>& values) {
        Tensor t(order, dim);
        if (static_cast<FlatIndex>(values.size()) != t.logical_size())
            throw ShapeError("dense coefficient count does not match d^q");
        for (size_t i = 0; i < values.size(); ++i)
            if (!ScalarTraits<S>::is_zero(values[i]))
                t.entries_.emplace_back(static_cast<FlatIndex>(i), values[i]);
        return t;
    }

    int order() const { return order_; }
    int dim() const { return dim_; }
    FlatIndex logical_size() const { return detail::flat_pow(dim_, order_); }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    S at(FlatIndex flat) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), flat,
                                   [](const Entry& e, FlatIndex v) { return e.first < v; });
        return (it != entries_.end() && it->first == flat) ? it->second : S(0);
    }

    S at(const std::vector<int>& idx) const { return at(flatten(idx)); }

    FlatIndex flatten(const std::vector<int>& idx) const {
        if (static_cast<int>(idx.size()) != order_)
            throw ShapeError("multi-index length does not match tensor order");
        FlatIndex flat = 0;
        for (int i : idx) {
            if (i < 0 || i >= dim_) throw ShapeError("multi-index component out of range");
            flat = flat * static_cast<unsigned>(dim_) + static_cast<unsigned>(i);
        }
        return flat;
    }

    std::vector<int> multi_index(FlatIndex flat) const {
        std::vector<int> idx(static_cast<size_t>(order_));
        for (int i = order_ - 1; i >= 0; --i) {
            idx[static_cast<size_t>(i)] = static_cast<int>(flat % static_cast<unsigned>(dim_));
            flat /= static_cast<unsigned>(dim_);
        }
        return idx;
    }

private:
    void validate_shape() const {
        if (order_ < 0) throw ShapeError("tensor order must be non-negative");
        if (dim_ < 1) throw ShapeError("tensor dimension must be positive");
        detail::flat_pow(dim_, order_);  // overflow check
    }

    void drop_zeros() {
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                      [](const Entry& e) {
                                          return ScalarTraits<S>::is_zero(e.second);
                                      }),
                       entries_.end());
    }

    template <class T>
    friend Tensor<T> contract(const Tensor<T>&, const Tensor<T>&, int);
    template <class T>
    friend Tensor<T> adjoint(const Tensor<T>&);
    template <class T>
    friend Tensor<T> axpy(const T&, const Tensor<T>&, const Tensor<T>&);
    template <class T>
    friend Tensor<T> scale(const T&, const Tensor<T>&);

    int order_ = 0;
    int dim_ = 1;
    std::vector<Entry> entries_;
};

using Kernel = Tensor<std::complex<double>>;
using RationalKernel = Tensor<Rational>;

// f*(i_1..i_q) = conj f(i_q..i_1).
template <class S>
Tensor<S> adjoint(const Tensor<S>& f) {
    Tensor<S> out(f.order(), f.dim());
    out.entries_.reserve(f.entries().size());
    for (const auto& [idx, val] : f.entries())
        out.entries_.emplace_back(detail::reverse_digits(idx, f.order(), f.dim()),
                                  ScalarTraits<S>::conj(val));
    std::sort(out.entries_.begin(), out.entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Largest entrywise |f - g| over the union of supports.
template <class S>
RealOf<S> max_abs_diff(const Tensor<S>& f, const Tensor<S>& g) {
    if (f.order() != g.order() || f.dim() != g.dim())
        throw ShapeError("tensor shapes differ");
    RealOf<S> worst(0);
    size_t i = 0, j = 0;
    const auto& a = f.entries();
    const auto& b = g.entries();
    while (i < a.size() || j < b.size()) {
        S diff;
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            diff = a[i++].second;
        else if (i == a.size() || b[j].first < a[i].first)
            diff = -b[j++].second;
        else {
            diff = a[i++].second - b[j++].second;
        }
        const RealOf<S> mag = ScalarTraits<S>::abs(diff);
        if (mag > worst) worst = mag;
    }
    return worst;
}

template <class S>
bool is_mirror_symmetric(const Tensor<S>& f, const RealOf<S>& tol) {
    return !(max_abs_diff(f, adjoint(f)) > tol);
}

// <f, g> = sum conj(f) g over coefficients.
template <class S>
S inner_product(const Tensor<S>& f, const Tensor<S>& g) {
    if (f.order() != g.order() || f.dim() != g.dim())
        throw ShapeError("inner product requires equal order and dimension");
    S sum(0);
    size_t i = 0, j = 0;
    const auto& a = f.entries();
    const auto& b = g.entries();
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first)
            ++i;
        else if (b[j].first < a[i].first)
            ++j;
        else
            sum += ScalarTraits<S>::conj(a[i++].second) * b[j++].second;
    }
    return sum;
}

template <class S>
RealOf<S> norm_sq(const Tensor<S>& f) {
    RealOf<S> sum(0);
    for (const auto& [idx, val] : f.entries()) sum += ScalarTraits<S>::abs_sq(val);
    return sum;
}

// alpha * f + g.
template <class S>
Tensor<S> axpy(const S& alpha, const Tensor<S>& f, const Tensor<S>& g) {
    if (f.order() != g.order() || f.dim() != g.dim())
        throw ShapeError("axpy requires equal shapes");
    Tensor<S> out(f.order(), f.dim());
    size_t i = 0, j = 0;
    const auto& a = f.entries();
    const auto& b = g.entries();
    while (i < a.size() || j < b.size()) {
        FlatIndex idx;
        S val;
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            idx = a[i].first;
            val = alpha * a[i++].second;
        } else if (i == a.size() || b[j].first < a[i].first) {
            idx = b[j].first;
            val = b[j++].second;
        } else {
            idx = a[i].first;
            val = alpha * a[i++].second + b[j++].second;
        }
        if (!ScalarTraits<S>::is_zero(val)) out.entries_.emplace_back(idx, val);
    }
    return out;
}

template <class S>
Tensor<S> scale(const S& alpha, const Tensor<S>& f) {
    Tensor<S> out(f.order(), f.dim());
    if (ScalarTraits<S>::is_zero(alpha)) return out;
    out.entries_.reserve(f.entries().size());
    for (const auto& [idx, val] : f.entries()) {
        const S scaled = alpha * val;
        if (!ScalarTraits<S>::is_zero(scaled)) out.entries_.emplace_back(idx, scaled);
    }
    return out;
}

namespace detail {
// Dense accumulation buffers beyond this size fall back to an ordered map.
inline constexpr FlatIndex kDenseAccumulatorLimit = FlatIndex(1) << 22;
}  // namespace detail

// r-th contraction of f and g: pairs the last r slots of f, reversed, against
// the first r slots of g.  r = 0 is the tensor product; full contraction of
// equal orders yields the order-0 scalar <f, g*>.
//
// The index reversal is applied digit-wise to f's trailing block before a
// grouped accumulation, so both code paths sum contributions in the same
// (f-major, then g-major) order.
template <class S>
Tensor<S> contract(const Tensor<S>& f, const Tensor<S>& g, int r) {
    const int q = f.order();
    const int p = g.order();
    if (f.dim() != g.dim()) throw ShapeError("contraction requires equal dimensions");
    if (r < 0 || r > std::min(q, p))
        throw ShapeError("contraction depth must satisfy 0 <= r <= min(order(f), order(g))");

    const int d = f.dim();
    const int n = q + p - 2 * r;
    Tensor<S> out(n, d);
    const FlatIndex dr = detail::flat_pow(d, r);
    const FlatIndex dpr = detail::flat_pow(d, p - r);
    const FlatIndex dn = out.logical_size();
    const auto& ge = g.entries();

    auto for_each_term = [&](auto&& emit) {
        for (const auto& [fflat, fval] : f.entries()) {
            const FlatIndex left = fflat / dr;
            const FlatIndex k = detail::reverse_digits(fflat % dr, r, d);
            const FlatIndex g_lo = k * dpr;
            auto it = std::lower_bound(ge.begin(), ge.end(), g_lo,
                                       [](const auto& e, FlatIndex v) { return e.first < v; });
            const FlatIndex g_hi = g_lo + dpr;
            for (; it != ge.end() && it->first < g_hi; ++it)
                emit(left * dpr + (it->first - g_lo), fval * it->second);
        }
    };

    if (dn <= detail::kDenseAccumulatorLimit) {
        std::vector<S> buf(static_cast<size_t>(dn), S(0));
        for_each_term([&](FlatIndex idx, S term) { buf[static_cast<size_t>(idx)] += term; });
        for (FlatIndex i = 0; i < dn; ++i)
            if (!ScalarTraits<S>::is_zero(buf[static_cast<size_t>(i)]))
                out.entries_.emplace_back(i, buf[static_cast<size_t>(i)]);
    } else {
        std::map<FlatIndex, S> acc;
        for_each_term([&](FlatIndex idx, S term) { acc[idx] += term; });
        for (const auto& [idx, val] : acc)
            if (!ScalarTraits<S>::is_zero(val)) out.entries_.emplace_back(idx, val);
    }
    return out;
}

// Order-2 projection kernel sum_{i<=p} e_i (x) e_i; carries a centered free
// Poisson distribution with rate p in the second chaos.
template <class S>
Tensor<S> poisson_kernel(int p, int d) {
    if (p < 1) throw DomainError("poisson kernel requires p >= 1");
    if (p > d) throw CapacityError("poisson kernel requires p <= d");
    std::vector<typename Tensor<S>::Entry> entries;
    entries.reserve(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i)
        entries.emplace_back(static_cast<FlatIndex>(i) * static_cast<unsigned>(d) +
                                 static_cast<unsigned>(i),
                             S(1));
    return Tensor<S>::from_entries(2, d, std::move(entries));
}

// value * sum_{i<=count} e_i^{(x) order}.
template <class S>
Tensor<S> diagonal_kernel(int order, int d, int count, const S& value) {
    if (order < 1) throw ShapeError("diagonal kernel requires order >= 1");
    if (count < 0 || count > d) throw CapacityError("diagonal kernel requires count <= d");
    FlatIndex step = 0;
    for (int k = 0; k < order; ++k) step = step * static_cast<unsigned>(d) + 1;
    std::vector<typename Tensor<S>::Entry> entries;
    for (int i = 0; i < count; ++i)
        entries.emplace_back(step * static_cast<unsigned>(i), value);
    return Tensor<S>::from_entries(order, d, std::move(entries));
}

// --- kernel text format ----------------------------------------------------
//
//   q d
//   i_1 ... i_q re im        (1-based indices; omitted entries are zero)
//
// Duplicate index tuples are an error.  '#' starts a comment.

Kernel read_kernel(std::istream& in);
RationalKernel read_kernel_rational(std::istream& in);
void write_kernel(std::ostream& out, const Kernel& kernel);

Kernel read_kernel_file(const std::string& path);
RationalKernel read_kernel_rational_file(const std::string& path);

}  // namespace freechaos
