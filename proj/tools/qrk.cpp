// qrk: command-line front end over the qrk library.

#include "qrk/paradan.hpp"
#include "qrk/reduction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace qrk;
using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

Int parse_int(const std::string& s) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw Error(ErrorKind::InvalidInput, "not an integer: '" + s + "'");
    return v;
}

Weight parse_weight(const std::string& s) {
    Weight w;
    for (const auto& t : split(s, ',')) w.push_back(parse_int(t));
    return w;
}

RatVec parse_ratvec(const std::string& s) {
    RatVec v;
    for (const auto& t : split(s, ',')) v.push_back(parse_rational(t));
    return v;
}

// "a,b;c,d*m"; the empty string is the empty list.
std::vector<std::pair<Weight, Int>> parse_weight_list(const std::string& s) {
    std::vector<std::pair<Weight, Int>> out;
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) return out;
    for (const auto& item : split(t, ';')) {
        auto star = item.find('*');
        Int mult = 1;
        std::string w = item;
        if (star != std::string::npos) {
            mult = parse_int(item.substr(star + 1));
            w = item.substr(0, star);
            if (mult < 1) throw Error(ErrorKind::InvalidInput, "multiplicity must be positive: " + item);
        }
        out.emplace_back(parse_weight(w), mult);
    }
    return out;
}

std::pair<std::string, std::string> split_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) return {s, s};
    return {s.substr(0, pos), s.substr(pos + 2)};
}

std::pair<Int, Int> parse_int_range(const std::string& s) {
    auto [a, b] = split_range(s);
    Int lo = parse_int(a), hi = parse_int(b);
    if (lo > hi) throw Error(ErrorKind::InvalidInput, "empty range: " + s);
    return {lo, hi};
}

// "lo..hi" for a cube, or "l1,l2..h1,h2".
Box parse_box(const std::string& s, std::size_t rank) {
    auto [a, b] = split_range(s);
    Weight lo = parse_weight(a), hi = parse_weight(b);
    if (lo.size() == 1 && rank != 1) lo.assign(rank, lo[0]);
    if (hi.size() == 1 && rank != 1) hi.assign(rank, hi[0]);
    if (lo.size() != rank || hi.size() != rank) throw Error(ErrorKind::InvalidInput, "box rank mismatch: " + s);
    for (std::size_t i = 0; i < rank; ++i)
        if (lo[i] > hi[i]) throw Error(ErrorKind::InvalidInput, "empty box: " + s);
    return Box(lo, hi);
}

unsigned long long seed_from(const std::optional<unsigned long long>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("QRK_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidInput, std::string("QRK_SEED is not an integer: ") + env);
        }
    }
    return 1;
}

// Deterministic vector polarizing phi: (1, 1/q, 1/q^2, ...) for q = 997, 998, ...
RatVec default_polarizing(const WeightList& phi, std::size_t rank, unsigned long long seed) {
    for (unsigned long long q = 997 + seed % 1000;; ++q) {
        RatVec y(rank);
        Q x = 1;
        for (std::size_t i = 0; i < rank; ++i) {
            y[i] = x;
            x /= Q(static_cast<long>(q));
        }
        if (is_polarizing(phi, y)) return y;
    }
}

std::string weight_str(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s;
}

std::string ratvec_str(const RatVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
    return s;
}

struct Output {
    json meta = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add_weight_row(const Weight& w, Int v) {
        std::vector<json> r(w.begin(), w.end());
        r.emplace_back(v);
        rows.push_back(std::move(r));
    }
};

std::vector<std::string> coord_columns(std::size_t rank, const std::string& last) {
    std::vector<std::string> c;
    for (std::size_t i = 0; i < rank; ++i) c.push_back("l" + std::to_string(i + 1));
    c.push_back(last);
    return c;
}

std::string cell(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void print(const Output& o, const std::string& format) {
    if (format == "json") {
        json j = o.meta;
        if (!o.columns.empty()) {
            j["columns"] = o.columns;
            json rows = json::array();
            for (const auto& r : o.rows) rows.push_back(r);
            j["rows"] = rows;
        }
        std::cout << j.dump(2) << "\n";
    } else if (format == "csv") {
        for (const auto& [k, v] : o.meta.items()) std::cout << "# " << k << "=" << cell(v) << "\n";
        if (o.columns.empty()) return;
        for (std::size_t i = 0; i < o.columns.size(); ++i) std::cout << (i ? "," : "") << o.columns[i];
        std::cout << "\n";
        for (const auto& r : o.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::string c = cell(r[i]);
                if (c.find(',') != std::string::npos) c = "\"" + c + "\"";
                std::cout << (i ? "," : "") << c;
            }
            std::cout << "\n";
        }
    } else {
        for (const auto& [k, v] : o.meta.items()) std::cout << k << ": " << cell(v) << "\n";
        if (o.columns.empty()) return;
        std::vector<std::size_t> width(o.columns.size());
        for (std::size_t i = 0; i < o.columns.size(); ++i) width[i] = o.columns[i].size();
        for (const auto& r : o.rows)
            for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], cell(r[i]).size());
        for (std::size_t i = 0; i < o.columns.size(); ++i)
            std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << o.columns[i];
        std::cout << "\n";
        for (const auto& r : o.rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                std::cout << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cell(r[i]);
            std::cout << "\n";
        }
    }
}

WeightList make_list(const std::vector<std::pair<Weight, Int>>& items, std::size_t rank) {
    WeightList l(rank);
    for (const auto& [w, m] : items) {
        if (w.size() != rank) throw Error(ErrorKind::InvalidInput, "weight rank mismatch: " + weight_str(w));
        l.add(w, m);
    }
    return l;
}

Bundle bundle_for(const ManifoldModel& m, const std::string& which) {
    if (which == "trivial") return Bundle::trivial(m);
    if (which == "model") return Bundle::from_model(m);
    throw Error(ErrorKind::InvalidInput, "unknown bundle: " + which);
}

RatVec model_y(const ManifoldModel& m, const std::string& y, unsigned long long seed) {
    if (y.empty()) return polarizing_vector(m, seed);
    RatVec v = parse_ratvec(y);
    if (v.size() != m.rank) throw Error(ErrorKind::InvalidInput, "Y rank mismatch");
    for (const auto& p : m.fixed_points)
        if (!is_polarizing(p.tangent, v)) throw Error(ErrorKind::NotPolarizing, "Y does not polarize " + p.id);
    return v;
}

struct Common {
    std::string format = "pretty";
    std::optional<unsigned long long> seed;
    std::string y;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrk: exact equivariant characters, partition functions and quasi-polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("--seed", c.seed, "Seed for generic choices (default: QRK_SEED or 1)");
    app.add_option("--y", c.y, "Polarizing vector Y, comma separated rationals");

    std::string phi, lambda, box, model_src, k_str, roots = "torus", gamma, gram, bundle = "trivial", alcove,
                                                 near, fit, test;
    Int max_period = 6;
    int max_degree = 3;

    auto* kpf = app.add_subcommand("kpf", "Partition function F Theta[Phi ^ Y] at a point or on a box");
    kpf->add_option("--phi", phi, "Weight list, e.g. \"1,0;0,1*2\"")->required();
    kpf->add_option("--lambda", lambda, "Point");
    kpf->add_option("--box", box, "Box lo..hi");

    auto* chr = app.add_subcommand("char", "Nonzero multiplicities of the character of E tensor L^k");
    chr->add_option("--model", model_src, "builtin:p1, builtin:flag3, or a JSON file")->required();
    chr->add_option("--k", k_str, "k")->required();
    chr->add_option("--box", box, "Box lo..hi (default: support hull)");
    chr->add_option("--bundle", bundle, "trivial or model")->capture_default_str();

    auto* inv = app.add_subcommand("invariant", "dim Q(M, L^k)^G over a k range");
    inv->add_option("--model", model_src, "Model")->required();
    inv->add_option("--roots", roots, "su2, a2, or torus")->capture_default_str();
    inv->add_option("--k", k_str, "k or a..b")->required();
    inv->add_option("--bundle", bundle, "trivial or model")->capture_default_str();

    auto* par = app.add_subcommand("paradan", "Verify the Paradan decomposition of Theta[Phi ^ Y] on a box");
    par->add_option("--phi", phi, "Weight list")->required();
    par->add_option("--gamma", gamma, "Regular value gamma in span(Phi)")->required();
    par->add_option("--box", box, "Box lo..hi")->required();
    par->add_option("--gram", gram, "Scalar product rows, e.g. \"2,-1;-1,2\" (default identity)");

    auto* del = app.add_subcommand("delta", "Asymptotic character Delta_mu on an alcove");
    del->add_option("--model", model_src, "Model")->required();
    del->add_option("--alcove", alcove, "A point of the alcove (rationals)")->required();
    del->add_option("--k", k_str, "k")->default_val("1");
    del->add_option("--lambda", lambda, "Point");
    del->add_option("--box", box, "Box lo..hi; only points of the alcove are printed");
    del->add_option("--bundle", bundle, "trivial or model")->capture_default_str();

    auto* dec = app.add_subcommand("decompose", "Verify the decomposition into component terms on a box");
    dec->add_option("--model", model_src, "Model")->required();
    dec->add_option("--k", k_str, "k")->default_val("1");
    dec->add_option("--box", box, "Box lo..hi (default: support hull)");
    dec->add_option("--gamma", gamma, "Generic gamma (default: generic point near --near)");
    dec->add_option("--near", near, "Center for the generic gamma search (default 0)");
    dec->add_option("--bundle", bundle, "trivial or model")->capture_default_str();

    auto* cqp = app.add_subcommand("checkqp", "Fit k -> dim Q(M, L^k)^G and predict a test range");
    cqp->add_option("--model", model_src, "Model")->required();
    cqp->add_option("--roots", roots, "su2, a2, or torus")->capture_default_str();
    cqp->add_option("--fit", fit, "Fit range a..b")->required();
    cqp->add_option("--test", test, "Test range a..b")->required();
    cqp->add_option("--max-period", max_period, "Largest period tried")->capture_default_str();
    cqp->add_option("--max-degree", max_degree, "Largest degree tried")->capture_default_str();

    auto* val = app.add_subcommand("validate", "Check a model for consistency");
    val->add_option("--model", model_src, "Model")->required();

    auto* exp = app.add_subcommand("model", "Print a model as JSON");
    exp->add_option("--model", model_src, "Model")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const unsigned long long seed = seed_from(c.seed);
        Output out;

        if (kpf->parsed()) {
            auto items = parse_weight_list(phi);
            std::size_t rank = 0;
            if (!items.empty()) rank = items[0].first.size();
            else if (!lambda.empty()) rank = parse_weight(lambda).size();
            else if (!c.y.empty()) rank = parse_ratvec(c.y).size();
            else throw Error(ErrorKind::InvalidInput, "cannot infer the rank");
            WeightList l = make_list(items, rank);
            RatVec y = c.y.empty() ? default_polarizing(l, rank, seed) : parse_ratvec(c.y);
            if (y.size() != rank) throw Error(ErrorKind::InvalidInput, "Y rank mismatch");
            if (!is_polarizing(l, y)) throw Error(ErrorKind::NotPolarizing, "Y is orthogonal to an element of Phi");
            out.meta["y"] = ratvec_str(y);
            out.columns = coord_columns(rank, "value");
            if (lambda.empty() == box.empty()) throw Error(ErrorKind::InvalidInput, "give exactly one of --lambda, --box");
            if (!lambda.empty()) {
                Weight w = parse_weight(lambda);
                if (w.size() != rank) throw Error(ErrorKind::InvalidInput, "lambda rank mismatch");
                out.add_weight_row(w, kpf_eval(l, y, w));
            } else {
                PartitionFunction pf(l, y);
                for (const auto& w : parse_box(box, rank).points()) out.add_weight_row(w, pf(w));
            }
        } else if (chr->parsed()) {
            ManifoldModel m = load_model(model_src);
            Int k = parse_int(k_str);
            Bundle b = bundle_for(m, bundle);
            RatVec y = model_y(m, c.y, seed);
            Box bx = box.empty() ? support_hull(m, b, k) : parse_box(box, m.rank);
            FormalCharacter ch = chi_table(m, b, k, bx, y);
            out.meta["model"] = m.name;
            out.meta["k"] = k;
            out.columns = coord_columns(m.rank, "mult");
            for (const auto& [w, v] : ch.terms()) out.add_weight_row(w, v);
        } else if (inv->parsed()) {
            ManifoldModel m = load_model(model_src);
            auto [lo, hi] = parse_int_range(k_str);
            RootSystemData r = RootSystemData::named(roots, m.rank);
            Bundle b = bundle_for(m, bundle);
            RatVec y = model_y(m, c.y, seed);
            out.meta["model"] = m.name;
            out.meta["roots"] = r.name;
            out.columns = {"k", "dim", "invariant"};
            for (Int k = lo; k <= hi; ++k)
                out.rows.push_back({k, total_dim(m, b, k, y), invariant_dim(m, b, k, r.negative, y)});
        } else if (par->parsed()) {
            auto items = parse_weight_list(phi);
            RatVec g0 = parse_ratvec(gamma);
            std::size_t rank = g0.size();
            WeightList l = make_list(items, rank);
            RatVec y = c.y.empty() ? default_polarizing(l, rank, seed) : parse_ratvec(c.y);
            if (y.size() != rank) throw Error(ErrorKind::InvalidInput, "Y rank mismatch");
            Gram g = Gram::identity(rank);
            if (!gram.empty()) {
                std::vector<RatVec> rows;
                for (const auto& r : split(gram, ';')) rows.push_back(parse_ratvec(r));
                g = Gram(rows);
            }
            ParadanReport rep = paradan_verify(l, y, g0, g, parse_box(box, rank));
            out.meta["y"] = ratvec_str(y);
            out.meta["terms"] = rep.terms;
            out.meta["points"] = rep.points;
            out.meta["half_space_violations"] = rep.half_space_violations.size();
            if (rep.mismatch) {
                out.meta["mismatch"] = weight_str(*rep.mismatch);
                out.meta["expected"] = rep.expected;
                out.meta["got"] = rep.got;
            }
            out.meta["result"] = rep.ok ? "PASS" : "FAIL";
            out.columns = {"subspace", "gamma_s", "grade"};
            for (const auto& t : paradan_decompose(l, y, g0, g))
                out.rows.push_back({to_string(t.s), ratvec_str(t.gamma_s), ratvec_str(t.grade)});
            print(out, c.format);
            return rep.ok ? 0 : 1;
        } else if (del->parsed()) {
            ManifoldModel m = load_model(model_src);
            Int k = parse_int(k_str);
            Bundle b = bundle_for(m, bundle);
            RatVec y = model_y(m, c.y, seed);
            RatVec a = parse_ratvec(alcove);
            if (a.size() != m.rank) throw Error(ErrorKind::InvalidInput, "alcove point rank mismatch");
            AlcoveId id = alcove_of(a, m);
            AsymptoticChar d(m, id, y);
            out.meta["model"] = m.name;
            out.meta["k"] = k;
            out.meta["alcove"] = ratvec_str(a);
            out.columns = coord_columns(m.rank, "value");
            if (lambda.empty() == box.empty()) throw Error(ErrorKind::InvalidInput, "give exactly one of --lambda, --box");
            if (!lambda.empty()) {
                Weight w = parse_weight(lambda);
                if (w.size() != m.rank) throw Error(ErrorKind::InvalidInput, "lambda rank mismatch");
                out.add_weight_row(w, d.eval(b, k, w));
            } else {
                for (const auto& w : alcove_points(m, id, parse_box(box, m.rank))) out.add_weight_row(w, d.eval(b, k, w));
            }
        } else if (dec->parsed()) {
            ManifoldModel m = load_model(model_src);
            Int k = parse_int(k_str);
            Bundle b = bundle_for(m, bundle);
            RatVec y = model_y(m, c.y, seed);
            RatVec g0;
            if (!gamma.empty()) {
                g0 = parse_ratvec(gamma);
            } else {
                RatVec center = near.empty() ? RatVec(m.rank, Q(0)) : parse_ratvec(near);
                g0 = generic_gamma(m, center, seed);
            }
            if (g0.size() != m.rank) throw Error(ErrorKind::InvalidInput, "gamma rank mismatch");
            Box bx = box.empty() ? support_hull(m, b, k) : parse_box(box, m.rank);
            DecompositionReport rep = decomposition_verify(m, b, k, g0, bx, y);
            out.meta["model"] = m.name;
            out.meta["k"] = k;
            out.meta["gamma"] = ratvec_str(g0);
            out.meta["points"] = rep.points;
            out.meta["half_space_violations"] = rep.half_space_violations.size();
            if (rep.mismatch) {
                out.meta["mismatch"] = weight_str(*rep.mismatch);
                out.meta["expected"] = rep.expected;
                out.meta["got"] = rep.got;
            }
            out.meta["result"] = rep.ok ? "PASS" : "FAIL";
            out.columns = {"component", "ids", "subspace", "nonzero"};
            for (std::size_t i = 0; i < m.components.size(); ++i) {
                std::string ids;
                for (const auto& s : m.components[i].ids) ids += (ids.empty() ? "" : " ") + s;
                std::size_t nz = i < rep.terms.size() ? rep.terms[i].terms().size() : 0;
                out.rows.push_back({i, ids, to_string(m.components[i].s), nz});
            }
            print(out, c.format);
            return rep.ok ? 0 : 1;
        } else if (cqp->parsed()) {
            ManifoldModel m = load_model(model_src);
            RootSystemData r = RootSystemData::named(roots, m.rank);
            RatVec y = model_y(m, c.y, seed);
            auto [flo, fhi] = parse_int_range(fit);
            auto [tlo, thi] = parse_int_range(test);
            out.meta["model"] = m.name;
            out.meta["roots"] = r.name;
            try {
                QrFit f = qr_quasipoly_check(m, r.negative, flo, fhi, tlo, thi, max_period, max_degree, y);
                out.meta["period"] = f.qp.period;
                out.meta["degree"] = f.qp.degree();
                out.meta["quasi_polynomial"] = f.qp.to_string();
                out.columns = {"residue", "coefficients"};
                for (std::size_t i = 0; i < f.qp.polys.size(); ++i) {
                    std::string cs;
                    for (std::size_t j = 0; j < f.qp.polys[i].size(); ++j)
                        cs += (j ? "," : "") + format_rational(f.qp.polys[i][j]);
                    out.rows.push_back({i, cs});
                }
                out.meta["result"] = "PASS";
                print(out, c.format);
                return 0;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoFit) throw;
                out.meta["result"] = "FAIL";
                out.meta["reason"] = e.what();
                print(out, c.format);
                return 1;
            }
        } else if (val->parsed()) {
            ManifoldModel m = load_model(model_src);
            ValidationReport rep = model_validate(m);
            out.meta["model"] = m.name;
            out.meta["result"] = rep.ok() ? "PASS" : "FAIL";
            out.columns = {"violation"};
            for (const auto& v : rep.violations) out.rows.push_back({v});
            print(out, c.format);
            return rep.ok() ? 0 : 2;
        } else if (exp->parsed()) {
            std::cout << model_to_json(load_model(model_src)) << "\n";
            return 0;
        }
        print(out, c.format);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.internal() ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
