#ifndef QSHEAF_COX_HPP
#define QSHEAF_COX_HPP

#include "qsheaf/biform.hpp"
#include "qsheaf/matrix.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qsheaf {

/* Cohomology of O_Q(a,b) on Q = P^1 x P^1 in the local-cohomology model.
   Classes are spanned by Laurent monomials s0^e0 s1^e1 t0^e2 t1^e3 with
   e0+e1 = a, e2+e3 = b and a fixed sign pattern per (degree, bundle):

     H^0 : all exponents >= 0                     (a >= 0 and b >= 0)
     H^1A: s-exponents >= 0, t-exponents <= -1    (a >= 0 and b <= -2)
     H^1B: s-exponents <= -1, t-exponents >= 0    (a <= -2 and b >= 0)
     H^2 : all exponents <= -1                    (a <= -2 and b <= -2)

   The two H^1 blocks are mutually exclusive, so no ordering question arises.
   Multiplication by a form is shift-and-truncate: product monomials whose
   sign pattern leaves the target block are Cech coboundaries and are
   dropped. */

struct CohBasisEl {
    std::array<int, 4> e;  // exponents of s0, s1, t0, t1
    friend bool operator==(const CohBasisEl&, const CohBasisEl&) = default;
    std::string str() const;
};

int h_line(int i, Bidegree d);

// ordered canonical basis, lexicographic in the (leading s, leading t) exponents
std::vector<CohBasisEl> coh_basis(int i, Bidegree d);

// index of a monomial in coh_basis(i, d), or nullopt when it truncates away
std::optional<std::size_t> coh_basis_index(int i, Bidegree d, const std::array<int, 4>& e);

bool serre_dual_check(int i, Bidegree d);

struct CohClass {
    int degree = 0;
    Bidegree bundle;
    std::vector<Rat> coords;  // over coh_basis(degree, bundle)
};

CohClass mult(const BiForm& f, const CohClass& c);

/* Matrix of multiplication H^i(O(from)) -> H^i(O(from + deg f)) in the
   canonical bases; the workhorse behind every long-exact-sequence map. */
Matrix<Rat> mult_matrix(const BiForm& f, int degree, Bidegree from);

long long euler_char_line(Bidegree d);

}  // namespace qsheaf

#endif
