#include "freechaos/kernel.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace freechaos {

namespace {

// Strips comments and reports whether anything substantive remains.
bool significant_line(std::string& line) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    return line.find_first_not_of(" \t\r\n") != std::string::npos;
}

struct RawEntry {
    FlatIndex flat;
    std::string re, im;
    int line_no;
};

struct RawKernel {
    int order = 0;
    int dim = 0;
    std::vector<RawEntry> entries;
};

RawKernel read_raw(std::istream& in) {
    RawKernel raw;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::set<FlatIndex> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (!significant_line(line)) continue;
        std::istringstream fields(line);
        if (!header_seen) {
            if (!(fields >> raw.order >> raw.dim))
                throw ParseError("expected header 'q d'", line_no);
            if (raw.order < 0) throw ParseError("order must be non-negative", line_no);
            if (raw.dim < 1) throw ParseError("dimension must be positive", line_no);
            std::string extra;
            if (fields >> extra) throw ParseError("trailing tokens after header", line_no);
            header_seen = true;
            continue;
        }
        FlatIndex flat = 0;
        for (int k = 0; k < raw.order; ++k) {
            long long i = 0;
            if (!(fields >> i))
                throw ParseError("expected " + std::to_string(raw.order) + " indices", line_no);
            if (i < 1 || i > raw.dim)
                throw ParseError("index " + std::to_string(i) + " outside 1.." +
                                     std::to_string(raw.dim),
                                 line_no);
            flat = flat * static_cast<unsigned>(raw.dim) + static_cast<unsigned>(i - 1);
        }
        RawEntry entry;
        entry.flat = flat;
        entry.line_no = line_no;
        if (!(fields >> entry.re >> entry.im))
            throw ParseError("expected real and imaginary parts", line_no);
        std::string extra;
        if (fields >> extra) throw ParseError("trailing tokens after coefficient", line_no);
        if (!seen.insert(flat).second) throw ParseError("duplicate index tuple", line_no);
        raw.entries.push_back(std::move(entry));
    }
    if (!header_seen) throw ParseError("missing header 'q d'", line_no == 0 ? 1 : line_no);
    return raw;
}

double parse_double(const std::string& token, int line_no) {
    try {
        size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed coefficient '" + token + "'", line_no);
    }
}

}  // namespace

Kernel read_kernel(std::istream& in) {
    const RawKernel raw = read_raw(in);
    std::vector<Kernel::Entry> entries;
    entries.reserve(raw.entries.size());
    for (const auto& e : raw.entries)
        entries.emplace_back(e.flat, std::complex<double>(parse_double(e.re, e.line_no),
                                                          parse_double(e.im, e.line_no)));
    return Kernel::from_entries(raw.order, raw.dim, std::move(entries));
}

RationalKernel read_kernel_rational(std::istream& in) {
    const RawKernel raw = read_raw(in);
    std::vector<RationalKernel::Entry> entries;
    entries.reserve(raw.entries.size());
    for (const auto& e : raw.entries) {
        Rational im;
        try {
            im = rational_from_string(e.im);
        } catch (const DomainError&) {
            throw ParseError("malformed coefficient '" + e.im + "'", e.line_no);
        }
        if (!im.is_zero())
            throw ParseError("exact mode supports real coefficients only", e.line_no);
        try {
            entries.emplace_back(e.flat, rational_from_string(e.re));
        } catch (const DomainError&) {
            throw ParseError("malformed coefficient '" + e.re + "'", e.line_no);
        }
    }
    return RationalKernel::from_entries(raw.order, raw.dim, std::move(entries));
}

void write_kernel(std::ostream& out, const Kernel& kernel) {
    out << kernel.order() << ' ' << kernel.dim() << '\n';
    char buf[64];
    for (const auto& [flat, val] : kernel.entries()) {
        for (int i : kernel.multi_index(flat)) out << i + 1 << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", val.real());
        out << buf << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", val.imag());
        out << buf << '\n';
    }
}

Kernel read_kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open kernel file: " + path);
    return read_kernel(in);
}

RationalKernel read_kernel_rational_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open kernel file: " + path);
    return read_kernel_rational(in);
}

}  // namespace freechaos
