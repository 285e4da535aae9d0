#include "qsheaf/cox.hpp"

#include <stdexcept>

namespace qsheaf {

namespace {

enum class Block { H0, H1A, H1B, H2, None };

Block block_of(int i, Bidegree d) {
    switch (i) {
        case 0: return (d.a >= 0 && d.b >= 0) ? Block::H0 : Block::None;
        case 1:
            if (d.a >= 0 && d.b <= -2) return Block::H1A;
            if (d.a <= -2 && d.b >= 0) return Block::H1B;
            return Block::None;
        case 2: return (d.a <= -2 && d.b <= -2) ? Block::H2 : Block::None;
        default: throw std::invalid_argument("cohomological degree must be 0, 1 or 2");
    }
}

bool fits_block(Block bl, const std::array<int, 4>& e) {
    switch (bl) {
        case Block::H0:  return e[0] >= 0 && e[1] >= 0 && e[2] >= 0 && e[3] >= 0;
        case Block::H1A: return e[0] >= 0 && e[1] >= 0 && e[2] <= -1 && e[3] <= -1;
        case Block::H1B: return e[0] <= -1 && e[1] <= -1 && e[2] >= 0 && e[3] >= 0;
        case Block::H2:  return e[0] <= -1 && e[1] <= -1 && e[2] <= -1 && e[3] <= -1;
        case Block::None: return false;
    }
    return false;
}

}  // namespace

std::string CohBasisEl::str() const {
    auto var = [](const char* n, int p) {
        if (p == 0) return std::string();
        if (p == 1) return std::string(n);
        return std::string(n) + "^" + std::to_string(p);
    };
    std::string s = var("s0", e[0]) + var("s1", e[1]) + var("t0", e[2]) + var("t1", e[3]);
    return s.empty() ? "1" : s;
}

int h_line(int i, Bidegree d) {
    switch (block_of(i, d)) {
        case Block::H0:  return (d.a + 1) * (d.b + 1);
        case Block::H1A: return (d.a + 1) * (-d.b - 1);
        case Block::H1B: return (-d.a - 1) * (d.b + 1);
        case Block::H2:  return (d.a + 1) * (d.b + 1);  // both factors negative
        case Block::None: return 0;
    }
    return 0;
}

std::vector<CohBasisEl> coh_basis(int i, Bidegree d) {
    std::vector<CohBasisEl> out;
    Block bl = block_of(i, d);
    if (bl == Block::None) return out;
    // s side: p runs over the s0 exponent (nonneg) or the s0 co-exponent (neg)
    const bool s_neg = (bl == Block::H1B || bl == Block::H2);
    const bool t_neg = (bl == Block::H1A || bl == Block::H2);
    const int s_count = s_neg ? -d.a - 1 : d.a + 1;
    const int t_count = t_neg ? -d.b - 1 : d.b + 1;
    out.reserve(static_cast<std::size_t>(s_count) * t_count);
    for (int p = 0; p < s_count; ++p) {
        int e0 = s_neg ? -(p + 1) : p;
        for (int q = 0; q < t_count; ++q) {
            int e2 = t_neg ? -(q + 1) : q;
            out.push_back({{e0, d.a - e0, e2, d.b - e2}});
        }
    }
    return out;
}

std::optional<std::size_t> coh_basis_index(int i, Bidegree d, const std::array<int, 4>& e) {
    Block bl = block_of(i, d);
    if (!fits_block(bl, e)) return std::nullopt;
    const bool s_neg = (bl == Block::H1B || bl == Block::H2);
    const bool t_neg = (bl == Block::H1A || bl == Block::H2);
    const int t_count = t_neg ? -d.b - 1 : d.b + 1;
    const int p = s_neg ? -e[0] - 1 : e[0];
    const int q = t_neg ? -e[2] - 1 : e[2];
    return static_cast<std::size_t>(p) * t_count + q;
}

bool serre_dual_check(int i, Bidegree d) {
    return h_line(i, d) == h_line(2 - i, kCanonical - d);
}

CohClass mult(const BiForm& f, const CohClass& c) {
    const Bidegree target = c.bundle + f.degree();
    CohClass out{c.degree, target,
                 std::vector<Rat>(static_cast<std::size_t>(h_line(c.degree, target)), Rat(0))};
    const auto basis = coh_basis(c.degree, c.bundle);
    if (c.coords.size() != basis.size())
        throw std::invalid_argument("mult: coordinate length != h^i");
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (c.coords[k] == 0) continue;
        for (const auto& [ij, cf] : f.coeffs()) {
            std::array<int, 4> e = basis[k].e;
            e[0] += ij.first;
            e[1] += f.degree().a - ij.first;
            e[2] += ij.second;
            e[3] += f.degree().b - ij.second;
            if (auto idx = coh_basis_index(c.degree, target, e))
                out.coords[*idx] += c.coords[k] * cf;
        }
    }
    return out;
}

Matrix<Rat> mult_matrix(const BiForm& f, int degree, Bidegree from) {
    const Bidegree to = from + f.degree();
    const auto src = coh_basis(degree, from);
    Matrix<Rat> m(static_cast<std::size_t>(h_line(degree, to)), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        for (const auto& [ij, cf] : f.coeffs()) {
            std::array<int, 4> e = src[j].e;
            e[0] += ij.first;
            e[1] += f.degree().a - ij.first;
            e[2] += ij.second;
            e[3] += f.degree().b - ij.second;
            if (auto idx = coh_basis_index(degree, to, e))
                m.at(*idx, j) += cf;
        }
    }
    return m;
}

long long euler_char_line(Bidegree d) {
    return static_cast<long long>(d.a + 1) * (d.b + 1);
}

}  // namespace qsheaf
