#ifndef QSHEAF_PRESENTATION_HPP
#define QSHEAF_PRESENTATION_HPP

#include "qsheaf/biform.hpp"
#include "qsheaf/matrix.hpp"
#include "qsheaf/rng.hpp"

#include <json.hpp>

#include <vector>

namespace qsheaf {

/* Chow ring of Q: Z[h1,h2]/(h1^2, h2^2), with h1*h2 the point class.
   Enough for Whitney-formula second Chern classes. */
struct ChowClass {
    long long c0 = 0, h1 = 0, h2 = 0, pt = 0;

    static ChowClass one() { return {1, 0, 0, 0}; }
    static ChowClass line_bundle(Bidegree d) { return {1, d.a, d.b, 0}; }

    ChowClass operator*(const ChowClass& o) const {
        return {c0 * o.c0,
                c0 * o.h1 + h1 * o.c0,
                c0 * o.h2 + h2 * o.c0,
                c0 * o.pt + pt * o.c0 + h1 * o.h2 + h2 * o.h1};
    }
    // inverse of a unit (c0 = +-1)
    ChowClass inverse() const;
};

// intersection number (a,b).(c,d) = ad + bc
inline long long intersect(Bidegree x, Bidegree y) {
    return static_cast<long long>(x.a) * y.b + static_cast<long long>(x.b) * y.a;
}

struct ChernData {
    int r = 0;
    Bidegree c1;
    long long c2 = 0;

    friend bool operator==(const ChernData&, const ChernData&) = default;
};

ChernData twist_chern(const ChernData& c, int s, int t);
long long euler_char(const ChernData& c);
ChernData dual_chern(const ChernData& c);
// Chern data of V (x) W from Chern character arithmetic
ChernData tensor_chern(const ChernData& v, const ChernData& w);

struct LineBundleSum {
    std::vector<Bidegree> parts;

    std::size_t size() const { return parts.size(); }
    Bidegree total() const {
        Bidegree s{0, 0};
        for (auto d : parts) s = s + d;
        return s;
    }
    LineBundleSum twisted(int s, int t) const {
        LineBundleSum o;
        for (auto d : parts) o.parts.push_back(d + Bidegree{s, t});
        return o;
    }
    friend bool operator==(const LineBundleSum&, const LineBundleSum&) = default;
};

/* A sheaf E presented by a matrix of forms between sums of line bundles.
   Cokernel side (the default): E = coker(A -> B), exact as
       0 -> A -> B -> E -> 0
   once the map is injective, i.e. the matrix has generic rank |A|.
   Kernel side (produced by dual()): same data read as
       0 -> E -> B^v -> A^v -> 0
   with the transposed action.  Entry (i,j) has bidegree target_i - source_j
   and must be the zero form whenever that has a negative component. */
class Presentation {
public:
    Presentation() = default;
    Presentation(LineBundleSum source, LineBundleSum target,
                 std::vector<std::vector<BiForm>> matrix,
                 bool locally_free, std::uint64_t seed = 0);

    const LineBundleSum& source() const { return source_; }
    const LineBundleSum& target() const { return target_; }
    const BiForm& entry(std::size_t i, std::size_t j) const { return m_[i][j]; }
    const std::vector<std::vector<BiForm>>& matrix() const { return m_; }
    bool locally_free() const { return locally_free_; }
    bool kernel_side() const { return kernel_side_; }
    std::uint64_t seed() const { return seed_; }

    int rank() const {
        return static_cast<int>(kernel_side_ ? 0 : target_.size() - source_.size());
    }

    // E(s,t); cokernel side only
    Presentation twisted(int s, int t) const;

    // evaluate the matrix at a projective point over K
    template <class K>
    Matrix<K> evaluated(const std::array<K, 2>& s, const std::array<K, 2>& t) const {
        Matrix<K> m(target_.size(), source_.size());
        for (std::size_t i = 0; i < target_.size(); ++i)
            for (std::size_t j = 0; j < source_.size(); ++j)
                m.at(i, j) = m_[i][j].eval(s, t);
        return m;
    }

    nlohmann::json to_json() const;
    static Presentation from_json(const nlohmann::json& j);

    friend Presentation dual(const Presentation& p);

private:
    LineBundleSum source_, target_;
    std::vector<std::vector<BiForm>> m_;  // m_[target row][source column]
    bool locally_free_ = false;
    bool kernel_side_ = false;
    std::uint64_t seed_ = 0;
};

// Whitney formula on 0 -> A -> B -> E -> 0; throws when rank <= 0
ChernData chern(const Presentation& p);

/* 0 -> E^v -> B^v -> A^v -> 0, the dualized sequence; valid when coker(p) is
   locally free (caller-asserted, spot-checked elsewhere). */
Presentation dual(const Presentation& p);

// randomized refutation of the locally-free assertion: matrix rank at sample
// points must equal |source| everywhere
bool spot_check_locally_free(const Presentation& p, Rng rng, int samples = 50);

// direct sum, block diagonal
Presentation direct_sum(const Presentation& p, const Presentation& q);

}  // namespace qsheaf

#endif
