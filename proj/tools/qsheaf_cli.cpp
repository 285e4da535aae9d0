#include "qsheaf/classifier.hpp"
#include "qsheaf/points.hpp"
#include "qsheaf/sheaf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace qsheaf;

namespace {

constexpr std::uint64_t kDefaultSeed = 2024;

Bidegree parse_pair(const std::string& s) {
    // accepts "(a,b)" or "a,b"
    std::string t = s;
    std::erase(t, '(');
    std::erase(t, ')');
    std::erase(t, ' ');
    auto comma = t.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("expected a pair like \"(a,b)\", got: " + s);
    return {std::stoi(t.substr(0, comma)), std::stoi(t.substr(comma + 1))};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

Presentation load_presentation(const std::string& path) {
    json j = load_json(path);
    // witness artifacts wrap the presentation; accept both layouts
    if (j.contains("presentation")) j = j.at("presentation");
    return Presentation::from_json(j);
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

struct FieldChoice {
    bool rational = true;
    std::uint64_t p = 0;
};

FieldChoice parse_field(const std::string& f) {
    if (f == "Q") return {true, 0};
    if (f.rfind("Fp:", 0) == 0) return {false, std::stoull(f.substr(3))};
    throw CLI::ValidationError("--field must be Q or Fp:<p>");
}

// PointSet input with the field tag dispatched at parse time
struct AnyPoints {
    FieldChoice field;
    PointSet<Rat> q;
    PointSet<Fp> fp;
};

AnyPoints load_points(const std::string& path, const std::string& field_flag) {
    json j = load_json(path);
    AnyPoints out;
    std::string f = j.at("field").get<std::string>();
    if (!field_flag.empty() && field_flag != f)
        throw CLI::ValidationError("--field " + field_flag + " does not match the input's field tag " + f);
    out.field = parse_field(f);
    if (out.field.rational) out.q = pointset_rat_from_json(j);
    else out.fp = pointset_fp_from_json(j, &out.field.p);
    return out;
}

const char* verdict_name(GgVerdict v) {
    switch (v) {
        case GgVerdict::gg_certified: return "gg_certified";
        case GgVerdict::not_gg: return "not_gg";
        default: return "inconclusive";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact sheaf-cohomology toolkit for P^1 x P^1"};
    app.require_subcommand(1);
    std::uint64_t seed = kDefaultSeed;
    std::string field_flag;
    app.add_option("--seed", seed, "global random seed")->capture_default_str();
    app.add_option("--field", field_flag,
                   "active field, Q or Fp:<p>; point inputs must carry the same tag");

    try {
        // cohomology
        auto* coh = app.add_subcommand("cohomology", "h^i of a line bundle or presented sheaf");
        std::string coh_bundle, coh_pres, coh_twist = "(0,0)";
        int coh_i = -1;
        coh->add_option("--bundle", coh_bundle, "line bundle \"(a,b)\"");
        coh->add_option("--presentation", coh_pres, "presentation JSON file");
        coh->add_option("--i", coh_i, "cohomological degree 0, 1 or 2");
        coh->add_option("--twist", coh_twist, "twist \"(s,t)\"")->capture_default_str();
        coh->callback([&] {
            Bidegree tw = parse_pair(coh_twist);
            if (!coh_bundle.empty()) {
                Bidegree d = parse_pair(coh_bundle) + tw;
                if (coh_i >= 0) emit({{"h", h_line(coh_i, d)}});
                else emit({{"h", {h_line(0, d), h_line(1, d), h_line(2, d)}}});
                return;
            }
            if (coh_pres.empty()) throw CLI::ValidationError("need --bundle or --presentation");
            SheafHandle h(load_presentation(coh_pres));
            auto v = h.cohomology(tw.a, tw.b);
            if (coh_i >= 0) emit({{"h", v[static_cast<std::size_t>(coh_i)]}});
            else emit({{"h", {v[0], v[1], v[2]}}});
        });

        // chern
        auto* ch = app.add_subcommand("chern", "Chern data of a presented sheaf");
        std::string ch_pres;
        std::string ch_twist = "(0,0)";
        ch->add_option("--presentation", ch_pres)->required();
        ch->add_option("--twist", ch_twist)->capture_default_str();
        ch->callback([&] {
            ChernData c = chern(load_presentation(ch_pres));
            Bidegree tw = parse_pair(ch_twist);
            c = twist_chern(c, tw.a, tw.b);
            emit({{"r", c.r}, {"c1", {c.c1.a, c.c1.b}}, {"c2", c.c2}, {"chi", euler_char(c)}});
        });

        // dual
        auto* du = app.add_subcommand("dual", "dualized presentation and its cohomology");
        std::string du_pres, du_twist = "(0,0)";
        du->add_option("--presentation", du_pres)->required();
        du->add_option("--twist", du_twist)->capture_default_str();
        du->callback([&] {
            Presentation d = dual(load_presentation(du_pres));
            SheafHandle h(d);
            Bidegree tw = parse_pair(du_twist);
            auto v = h.cohomology(tw.a, tw.b);
            emit({{"presentation", d.to_json()}, {"h", {v[0], v[1], v[2]}}});
        });

        // gg-check
        auto* gg = app.add_subcommand("gg-check", "global generation criteria for a presented sheaf");
        std::string gg_pres;
        gg->add_option("--presentation", gg_pres)->required();
        gg->callback([&] {
            SheafHandle h(load_presentation(gg_pres));
            emit({{"ruling_regularity", gg_ruling_regularity(h)},
                  {"castelnuovo_mumford", gg_castelnuovo_mumford(h)},
                  {"quotient_of_globally_generated", gg_quotient_route(h.presentation())}});
        });

        // index
        auto* ix = app.add_subcommand("index", "indices of a presented sheaf in a window");
        std::string ix_pres, ix_window = "(2,2)";
        ix->add_option("--presentation", ix_pres)->required();
        ix->add_option("--window", ix_window)->capture_default_str();
        ix->callback([&] {
            SheafHandle h(load_presentation(ix_pres));
            json out = json::array();
            for (auto d : index_search(h, parse_pair(ix_window))) out.push_back({d.a, d.b});
            emit({{"indices", out}});
        });

        // hom-cohomology
        auto* hc = app.add_subcommand("hom-cohomology", "h^i(F^v (x) G (s,t))");
        std::string hc_f, hc_g, hc_twist = "(0,0)";
        hc->add_option("--f", hc_f)->required();
        hc->add_option("--g", hc_g)->required();
        hc->add_option("--twist", hc_twist)->capture_default_str();
        hc->callback([&] {
            Bidegree tw = parse_pair(hc_twist);
            auto v = hom_cohomology(load_presentation(hc_f), load_presentation(hc_g), tw.a, tw.b);
            emit({{"h", {v[0], v[1], v[2]}}});
        });

        // ideal
        auto* id = app.add_subcommand("ideal", "h^i(I_Z(a,b)) for a point set");
        std::string id_points, id_bundle;
        id->add_option("--points", id_points)->required();
        id->add_option("--bundle", id_bundle)->required();
        id->callback([&] {
            AnyPoints z = load_points(id_points, field_flag);
            Bidegree d = parse_pair(id_bundle);
            auto v = z.field.rational ? ideal_cohomology(z.q, d) : ideal_cohomology(z.fp, d);
            emit({{"h", {v[0], v[1], v[2]}}});
        });

        // cb-check
        auto* cb = app.add_subcommand("cb-check", "Cayley-Bacharach CB(a,b) for a point set");
        std::string cb_points, cb_bundle;
        cb->add_option("--points", cb_points)->required();
        cb->add_option("--bundle", cb_bundle)->required();
        cb->callback([&] {
            AnyPoints z = load_points(cb_points, field_flag);
            Bidegree d = parse_pair(cb_bundle);
            emit({{"cb", z.field.rational ? cayley_bacharach(z.q, d) : cayley_bacharach(z.fp, d)}});
        });

        // gg of ideal sheaves
        auto* gi = app.add_subcommand("gg-ideal", "global generation verdict for I_Z(a,b)");
        std::string gi_points, gi_bundle;
        gi->add_option("--points", gi_points)->required();
        gi->add_option("--bundle", gi_bundle)->required();
        gi->callback([&] {
            AnyPoints z = load_points(gi_points, field_flag);
            Bidegree d = parse_pair(gi_bundle);
            GgResult r = z.field.rational ? is_gg_ideal(z.q, d) : is_gg_ideal(z.fp, d);
            emit({{"verdict", verdict_name(r.verdict)}, {"reason", r.reason}});
        });

        // residual
        auto* re = app.add_subcommand("residual", "residual point set with respect to ruling lines");
        std::string re_points, re_lines;
        re->add_option("--points", re_points)->required();
        re->add_option("--lines", re_lines,
                       "divisor as JSON: [[ruling,[r0,r1]],...] with ruling 0 for {s=r}, 1 for {t=r}")
            ->required();
        re->callback([&] {
            AnyPoints z = load_points(re_points, field_flag);
            json lines = json::parse(re_lines);
            if (z.field.rational) {
                LineDivisor<Rat> d;
                for (const auto& c : lines)
                    d.components.push_back({c.at(0).get<int>(),
                                            {rat_from_string(c.at(1).at(0).get<std::string>()),
                                             rat_from_string(c.at(1).at(1).get<std::string>())}});
                emit(pointset_to_json(residual(z.q, d)));
            } else {
                LineDivisor<Fp> d;
                for (const auto& c : lines)
                    d.components.push_back({c.at(0).get<int>(),
                                            {Fp(c.at(1).at(0).get<long long>(), z.field.p),
                                             Fp(c.at(1).at(1).get<long long>(), z.field.p)}});
                emit(pointset_to_json(residual(z.fp, d), z.field.p));
            }
        });

        // length7-search
        auto* l7 = app.add_subcommand("length7-search", "exclusion search over degree-7 point sets");
        long long l7_trials = 10000;
        int l7_jobs = 1;
        std::vector<std::uint64_t> l7_primes{10007, 31337};
        long long l7_structured = 200;
        std::string l7_log;
        l7->add_option("--trials", l7_trials, "random trials per prime")->capture_default_str();
        l7->add_option("--jobs", l7_jobs)->capture_default_str();
        l7->add_option("--primes", l7_primes)->capture_default_str();
        l7->add_option("--structured", l7_structured, "instances per structured family per prime")
            ->capture_default_str();
        l7->add_option("--log", l7_log, "write one JSON line per trial to this file");
        l7->callback([&] {
            Length7Report rep = length7_search(l7_trials, seed, l7_jobs, l7_primes, l7_structured,
                                               !l7_log.empty());
            if (!l7_log.empty()) {
                std::ofstream out(l7_log);
                rep.write_jsonl(out);
            }
            emit(rep.to_json());
            if (!rep.clean()) std::exit(1);
        });

        // classify
        auto* cl = app.add_subcommand("classify", "re-derive and verify the classification tables");
        int cl_jobs = 1;
        std::string cl_out;
        cl->add_option("--jobs", cl_jobs)->capture_default_str();
        cl->add_option("--out", cl_out, "write the full report to a file");
        cl->callback([&] {
            ClassificationReport rep = verify_classification(seed, cl_jobs);
            json j = rep.to_json();
            if (!cl_out.empty()) {
                std::ofstream out(cl_out);
                out << j.dump(2) << "\n";
                emit({{"ok", rep.ok()},
                      {"rows", rep.rows.size()},
                      {"mismatches", rep.mismatches},
                      {"certificate_failures", rep.certificate_failures},
                      {"report", cl_out}});
            } else {
                emit(j);
            }
            if (!rep.ok()) std::exit(1);
        });

        // witness
        auto* wi = app.add_subcommand("witness", "canonical witness for an admissible triple");
        std::string wi_c1, wi_index, wi_out_dir;
        int wi_c2 = -1, wi_r = -1;
        bool wi_all = false;
        wi->add_option("--c1", wi_c1);
        wi->add_option("--c2", wi_c2);
        wi->add_option("--r", wi_r);
        wi->add_option("--index", wi_index, "index hint \"(m,n)\"");
        wi->add_flag("--all", wi_all, "emit the whole corpus");
        wi->add_option("--out", wi_out_dir, "directory for --all output");
        wi->callback([&] {
            if (wi_all) {
                auto corpus = witness_corpus(seed);
                json manifest = json::array();
                for (const auto& w : corpus) {
                    manifest.push_back({{"key", w.key},
                                        {"c1", {w.triple.c1.a, w.triple.c1.b}},
                                        {"c2", w.triple.c2},
                                        {"r", w.triple.r},
                                        {"index", {w.index.a, w.index.b}},
                                        {"kind", w.kind},
                                        {"file", w.key + ".json"}});
                    if (!wi_out_dir.empty()) {
                        std::ofstream out(wi_out_dir + "/" + w.key + ".json");
                        out << w.to_json().dump(2) << "\n";
                    }
                }
                if (!wi_out_dir.empty()) {
                    std::ofstream out(wi_out_dir + "/manifest.json");
                    out << manifest.dump(2) << "\n";
                }
                emit({{"count", corpus.size()},
                      {"manifest", wi_out_dir.empty() ? manifest : json(wi_out_dir + "/manifest.json")}});
                return;
            }
            if (wi_c1.empty() || wi_c2 < 0 || wi_r < 0)
                throw CLI::ValidationError("need --c1, --c2, --r (or --all)");
            std::optional<Bidegree> hint;
            if (!wi_index.empty()) hint = parse_pair(wi_index);
            emit(witness(parse_pair(wi_c1), wi_c2, wi_r, hint, seed).to_json());
        });

        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit with 2, --help with 0
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed JSON input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
