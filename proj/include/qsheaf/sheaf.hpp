#ifndef QSHEAF_SHEAF_HPP
#define QSHEAF_SHEAF_HPP

#include "qsheaf/cox.hpp"
#include "qsheaf/presentation.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>

namespace qsheaf {

/* Twisted cohomology of a presented sheaf, from the long exact sequence of
   0 -> A -> B -> E -> 0 (cokernel side) or 0 -> E -> B^v -> A^v -> 0 (kernel
   side).  All dimensions fall out of the ranks of the three maps
   H^d(left) -> H^d(right) assembled entrywise with mult_matrix. */
class SheafHandle {
public:
    explicit SheafHandle(Presentation p) : p_(std::move(p)) {}

    const Presentation& presentation() const { return p_; }

    // (h^0, h^1, h^2) of E(s,t); cached
    std::array<int, 3> cohomology(int s, int t);
    int h(int degree, int s, int t) { return cohomology(s, t)[degree]; }

    // maps H^d(A(s,t)) -> H^d(B(s,t)) (cokernel side), or
    // H^d(B^v(s,t)) -> H^d(A^v(s,t)) (kernel side)
    Matrix<Rat> les_map(int degree, int s, int t) const;

    // dimension of H^d of the left/right line-bundle sums at the twist
    int h_left(int degree, int s, int t) const;
    int h_right(int degree, int s, int t) const;

private:
    Presentation p_;
    std::map<std::pair<int, int>, std::array<int, 3>> cache_;
};

/* Sufficient global-generation tests; false means "criterion inconclusive",
   never "not globally generated". */
bool gg_castelnuovo_mumford(SheafHandle& h);
bool gg_ruling_regularity(SheafHandle& h);
// a cokernel of a map into a sum of O(a,b) with a,b >= 0 is a quotient of a
// globally generated bundle, hence globally generated
bool gg_quotient_route(const Presentation& p);

// Hom(E, O_Q) = 0 test for globally generated E; caller certifies gg
enum class GgCertified { yes };
bool trivial_factor_test(SheafHandle& h, GgCertified);

// maximal-type shape 0 -> O(-a,-b) -> O^{r+1} -> E -> 0 with h^1(O(-a,-b)) = 0
bool is_maximal_type_shape(const Presentation& p);
bool indecomposable_maximal_type(SheafHandle& h);

// all maximal (m,n) in the window [-bound, bound] with h^0(E(-m,-n)) != 0
std::vector<Bidegree> index_search(SheafHandle& h, Bidegree bound);

/* Extension classes live in H^1(E^v) = Ext^1(E, O).  The LES coordinates put
   the delta-image part first (coker of H^0(B^v) -> H^0(A^v)), then the part
   mapping into H^1(B^v).  Only delta-image classes are realizable as extra
   rows over the given presentation; witnesses are resolved deeply enough that
   this covers everything needed. */
struct ExtClassSpace {
    int dim = 0;           // h^1(E^v)
    int dim_realizable = 0;  // delta-image part
    Matrix<Rat> v0;        // H^0(B^v) -> H^0(A^v)
    std::vector<std::size_t> coker_rows;  // coordinates of the coker part
};
ExtClassSpace ext1_trivial(const Presentation& p);

struct ExtensionResult {
    Presentation presentation;
    bool classes_independent = true;  // dependent => provable trivial factor
};

// horseshoe: E' = coker(A -> B + O^k) realizing k classes (coordinates in the
// ExtClassSpace ordering; the tail part must vanish)
ExtensionResult extension_by_trivial(const Presentation& p, int k,
                                     const std::vector<std::vector<Rat>>& classes);
// k generic seeded classes
ExtensionResult extension_by_trivial(const Presentation& p, int k, Rng rng);

/* Mapping cone for 0 -> S -> E -> Q -> 0: block presentation
   [ M_s  N ; 0  M_q ] with N : A_q -> B_s the class data. */
Presentation extension_of(const Presentation& pq, const Presentation& ps,
                          const std::vector<std::vector<BiForm>>& class_data);
Presentation extension_of_generic(const Presentation& pq, const Presentation& ps, Rng rng);
// true when the class data maps to zero in Ext^1(coker pq, coker ps)
bool extension_is_split_class(const Presentation& pq, const Presentation& ps,
                              const std::vector<std::vector<BiForm>>& class_data);

/* Cohomology with representatives.  H^d(E(p,q)) is carried as
   coker(phi_d) (+) ker(phi_{d+1}) in LES coordinates; multiplication maps act
   blockwise.  The model is exact unless a kernel-part class must land in a
   nonzero cokernel part, which is detected and rejected. */
class InterferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TwistModel {
    int degree = 0;
    Bidegree twist;
    int dim_coker = 0, dim_ker = 0;
    int dim() const { return dim_coker + dim_ker; }
};

class CohomologyModel {
public:
    explicit CohomologyModel(Presentation p);

    const Presentation& presentation() const { return p_; }
    TwistModel model(int degree, Bidegree twist);
    // matrix of multiplication H^d(E(from)) -> H^d(E(from + deg f))
    Matrix<Rat> induced_mult(int degree, Bidegree from, const BiForm& f);
    // model coordinates of a global section given by a vector over H^0(B(twist))
    std::vector<Rat> project_h0_section(Bidegree twist, const std::vector<Rat>& v);

private:
    struct TwistData;
    TwistData& data(int degree, Bidegree twist);

    Presentation p_;
    std::map<std::pair<int, std::pair<int, int>>, std::shared_ptr<TwistData>> cache_;
};

/* h^i(F^v (x) G (s,t)) from the LES of 0 -> F^v(x)G -> B^v(x)G -> A^v(x)G -> 0,
   with the connecting maps acting through CohomologyModel of G.  Requires
   coker(pf) locally free. */
std::array<int, 3> hom_cohomology(const Presentation& pf, const Presentation& pg,
                                  int s, int t);

}  // namespace qsheaf

#endif
