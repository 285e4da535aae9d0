#include "qsheaf/presentation.hpp"

#include <stdexcept>

namespace qsheaf {

ChowClass ChowClass::inverse() const {
    if (c0 != 1 && c0 != -1)
        throw std::invalid_argument("ChowClass::inverse: not a unit");
    // (c0 + n)^-1 = c0 - n + n^2/c0 ... truncated at the point class
    ChowClass n{0, h1, h2, pt};
    ChowClass n2 = n * n;
    return {c0, -h1 * c0 * c0 /* = -h1/c0 since c0^2 = 1 */, -h2, n2.pt * c0 - pt};
}

ChernData twist_chern(const ChernData& c, int s, int t) {
    ChernData o;
    o.r = c.r;
    o.c1 = {c.c1.a + c.r * s, c.c1.b + c.r * t};
    o.c2 = c.c2 + static_cast<long long>(c.r - 1) * (c.c1.a * t + c.c1.b * s) +
           2LL * s * t * (static_cast<long long>(c.r) * (c.r - 1) / 2);
    return o;
}

long long euler_char(const ChernData& c) {
    return static_cast<long long>(c.c1.a + 1) * (c.c1.b + 1) + c.r - c.c2 - 1;
}

ChernData dual_chern(const ChernData& c) { return {c.r, -c.c1, c.c2}; }

ChernData tensor_chern(const ChernData& v, const ChernData& w) {
    // ch2 = c1^2/2 - c2 = ab - c2 on Q (c1^2 = 2ab, always even)
    auto ch2 = [](const ChernData& x) {
        return static_cast<long long>(x.c1.a) * x.c1.b - x.c2;
    };
    ChernData o;
    o.r = v.r * w.r;
    o.c1 = {w.r * v.c1.a + v.r * w.c1.a, w.r * v.c1.b + v.r * w.c1.b};
    long long ch2vw = v.r * ch2(w) + intersect(v.c1, w.c1) + w.r * ch2(v);
    o.c2 = static_cast<long long>(o.c1.a) * o.c1.b - ch2vw;
    return o;
}

Presentation::Presentation(LineBundleSum source, LineBundleSum target,
                           std::vector<std::vector<BiForm>> matrix,
                           bool locally_free, std::uint64_t seed)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)),
      locally_free_(locally_free), seed_(seed) {
    if (m_.size() != target_.size())
        throw std::invalid_argument("Presentation: row count != |target|");
    for (std::size_t i = 0; i < m_.size(); ++i) {
        if (m_[i].size() != source_.size())
            throw std::invalid_argument("Presentation: column count != |source|");
        for (std::size_t j = 0; j < m_[i].size(); ++j) {
            Bidegree want = target_.parts[i] - source_.parts[j];
            if (want.a < 0 || want.b < 0) {
                if (!m_[i][j].is_zero())
                    throw std::invalid_argument(
                        "Presentation: nonzero entry at negative bidegree " + want.str());
                m_[i][j] = BiForm({0, 0});
            } else if (m_[i][j].degree() != want && !m_[i][j].is_zero()) {
                throw std::invalid_argument("Presentation: entry bidegree mismatch at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

Presentation Presentation::twisted(int s, int t) const {
    if (kernel_side_)
        throw std::logic_error("Presentation::twisted: kernel-side handles take the twist at query time");
    Presentation o = *this;
    o.source_ = source_.twisted(s, t);
    o.target_ = target_.twisted(s, t);
    return o;
}

nlohmann::json Presentation::to_json() const {
    nlohmann::json src = nlohmann::json::array(), tgt = nlohmann::json::array();
    for (auto d : source_.parts) src.push_back({d.a, d.b});
    for (auto d : target_.parts) tgt.push_back({d.a, d.b});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m_) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& f : row) r.push_back(f.to_json());
        rows.push_back(r);
    }
    nlohmann::json j{{"source", src},       {"target", tgt},
                     {"matrix", rows},      {"locally_free", locally_free_},
                     {"seed", seed_}};
    if (kernel_side_) j["kernel_side"] = true;
    return j;
}

Presentation Presentation::from_json(const nlohmann::json& j) {
    LineBundleSum src, tgt;
    for (const auto& d : j.at("source")) src.parts.push_back({d.at(0).get<int>(), d.at(1).get<int>()});
    for (const auto& d : j.at("target")) tgt.parts.push_back({d.at(0).get<int>(), d.at(1).get<int>()});
    std::vector<std::vector<BiForm>> m;
    for (const auto& row : j.at("matrix")) {
        std::vector<BiForm> r;
        for (const auto& f : row) r.push_back(BiForm::from_json(f));
        m.push_back(std::move(r));
    }
    Presentation p(std::move(src), std::move(tgt), std::move(m),
                   j.at("locally_free").get<bool>(), j.value("seed", std::uint64_t{0}));
    p.kernel_side_ = j.value("kernel_side", false);
    return p;
}

ChernData chern(const Presentation& p) {
    if (p.kernel_side())
        throw std::invalid_argument("chern: cokernel-side presentations only");
    int r = p.rank();
    if (r <= 0) throw std::invalid_argument("chern: rank <= 0");
    ChowClass total = ChowClass::one();
    for (auto d : p.target().parts) total = total * ChowClass::line_bundle(d);
    for (auto d : p.source().parts) total = total * ChowClass::line_bundle(d).inverse();
    return {r, {static_cast<int>(total.h1), static_cast<int>(total.h2)}, total.pt};
}

Presentation dual(const Presentation& p) {
    if (!p.locally_free())
        throw std::invalid_argument("dual: locally-free assertion flag required");
    Presentation o = p;
    o.kernel_side_ = !p.kernel_side_;
    return o;
}

bool spot_check_locally_free(const Presentation& p, Rng rng, int samples) {
    const std::size_t want = p.source().size();
    // cover all four affine charts, plus mixed points
    for (int n = 0; n < samples; ++n) {
        std::array<Rat, 2> s, t;
        int chart = n % 4;
        Rat xs(rng.uniform(-40, 40)), xt(rng.uniform(-40, 40));
        s = (chart & 1) ? std::array<Rat, 2>{Rat(1), xs} : std::array<Rat, 2>{xs, Rat(1)};
        t = (chart & 2) ? std::array<Rat, 2>{Rat(1), xt} : std::array<Rat, 2>{xt, Rat(1)};
        if (p.evaluated<Rat>(s, t).rank() != want) return false;
    }
    return true;
}

Presentation direct_sum(const Presentation& p, const Presentation& q) {
    if (p.kernel_side() || q.kernel_side())
        throw std::invalid_argument("direct_sum: cokernel-side only");
    LineBundleSum src, tgt;
    src.parts = p.source().parts;
    src.parts.insert(src.parts.end(), q.source().parts.begin(), q.source().parts.end());
    tgt.parts = p.target().parts;
    tgt.parts.insert(tgt.parts.end(), q.target().parts.begin(), q.target().parts.end());
    std::vector<std::vector<BiForm>> m(tgt.size(), std::vector<BiForm>(src.size(), BiForm({0, 0})));
    auto fill_zero = [&](std::size_t i, std::size_t j) {
        Bidegree want = tgt.parts[i] - src.parts[j];
        m[i][j] = (want.a >= 0 && want.b >= 0) ? BiForm::zero(want) : BiForm({0, 0});
    };
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) fill_zero(i, j);
    for (std::size_t i = 0; i < p.target().size(); ++i)
        for (std::size_t j = 0; j < p.source().size(); ++j) m[i][j] = p.entry(i, j);
    for (std::size_t i = 0; i < q.target().size(); ++i)
        for (std::size_t j = 0; j < q.source().size(); ++j)
            m[p.target().size() + i][p.source().size() + j] = q.entry(i, j);
    return Presentation(std::move(src), std::move(tgt), std::move(m),
                        p.locally_free() && q.locally_free());
}

}  // namespace qsheaf
