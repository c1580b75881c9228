#include "gp/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "gp/closedform.hpp"
#include "gp/cohomology.hpp"
#include "gp/expr.hpp"

namespace gp {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string sig;
    std::string psi, a, b, alpha, g1, g2;
    std::string parity = "both";
    std::string in, out;
    std::vector<std::string> positional;
    int nmax = -1;
    int emax = -1;
    int k = 1;
    bool convention = false;
    bool pretty = false;
    bool verify = false;

    std::size_t next_positional = 0;
    bool in_used = false;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return trim(ss.str());
}

// flag value, else the next positional argument, else the --in file
std::string take(Options& o, const std::string& flag, const char* what) {
    if (!flag.empty()) return flag;
    if (o.next_positional < o.positional.size()) return o.positional[o.next_positional++];
    if (!o.in.empty() && !o.in_used) {
        o.in_used = true;
        return read_file(o.in);
    }
    throw UsageError(std::string("missing expression: ") + what);
}

AlgebraSignature parse_signature(const std::string& s, const char* command) {
    if (s.empty()) throw UsageError(std::string(command) + ": --sig m,n is required");
    auto sep = s.find_first_of(",|");
    if (sep == std::string::npos) throw UsageError("--sig: expected m,n");
    try {
        std::size_t p1 = 0, p2 = 0;
        int m = std::stoi(s.substr(0, sep), &p1);
        int n = std::stoi(s.substr(sep + 1), &p2);
        if (p1 != sep || p2 != s.size() - sep - 1 || m < 0 || n < 0) throw UsageError("--sig: expected m,n");
        return AlgebraSignature(m, n);
    } catch (const std::logic_error&) {
        throw UsageError("--sig: expected m,n");
    }
}

AlgebraSignature signature_or(const Options& o, int m, int n, const char* command) {
    if (o.sig.empty()) return AlgebraSignature(m, n);
    AlgebraSignature s = parse_signature(o.sig, command);
    if (s.m != m || s.n != n)
        throw UsageError(std::string(command) + ": signature must be " + std::to_string(m) + "," + std::to_string(n));
    return s;
}

ParityFilter parse_parity(const std::string& s) {
    if (s == "odd") return ParityFilter::Odd;
    if (s == "even") return ParityFilter::Even;
    if (s == "both") return ParityFilter::Both;
    throw UsageError("--parity: expected odd, even or both");
}

std::string sig_string(const AlgebraSignature& s) { return std::to_string(s.m) + "|" + std::to_string(s.n); }

std::string upoly_string(const UPoly& p) { return to_string(from_upoly(p, 1, 0, 0), AlgebraSignature(1, 0)); }

std::string parity_name(int p) { return p ? "odd" : "even"; }

int default_truncation(const MultiDerivation& a, const MultiDerivation& b) {
    return std::max(0, a.max_symbols() + b.max_symbols() - 1);
}

struct Output {
    Json input = Json::object();
    Json result = Json::object();
    std::string text;  // --pretty rendering; empty means indented JSON
    int code = kExitOk;
};

void cmd_check(Options& o, Output& out) {
    AlgebraSignature sig = parse_signature(o.sig, "check");
    std::string s = take(o, o.psi, "psi");
    MultiDerivation psi = parse_multiderivation(s, sig);
    int trunc = o.nmax >= 0 ? o.nmax : default_truncation(psi, psi);
    out.input = {{"sig", sig_string(sig)}, {"psi", to_string(psi, sig)}, {"max_symbols", trunc}};
    auto r = is_codifferential(psi, trunc);
    out.result["codifferential"] = r.ok;
    out.result["residual"] = to_string(r.residual, sig);
    if (!r.ok) out.result["first_nonzero_symbols"] = r.first_nonzero_symbols;
    out.code = r.ok ? kExitOk : kExitNegative;
}

void cmd_bracket(Options& o, Output& out, bool modified) {
    AlgebraSignature sig = parse_signature(o.sig, modified ? "mbracket" : "bracket");
    MultiDerivation a = parse_multiderivation(take(o, o.a, "a"), sig);
    MultiDerivation b = parse_multiderivation(take(o, o.b, "b"), sig);
    out.input = {{"sig", sig_string(sig)}, {"a", to_string(a, sig)}, {"b", to_string(b, sig)}};
    MultiDerivation r = modified ? modified_bracket(a, b) : schouten_bracket(a, b);
    out.result["value"] = to_string(r, sig);
    out.result["zero"] = r.is_zero();
}

Json slice_json(const SliceSpec& s, const SliceResult& r, const AlgebraSignature& sig) {
    Json j;
    j["n"] = s.exterior_degree;
    j["parity"] = parity_name(s.parity);
    j["e"] = s.internal_degree;
    j["dims"] = {{"Z", r.dim_z}, {"B", r.dim_b}, {"H", r.dim_h}};
    if (!r.converged) j["converged"] = false;
    Json reps = Json::array();
    for (const auto& rep : r.representatives) reps.push_back(to_string(rep, sig));
    j["representatives"] = reps;
    return j;
}

void cmd_cohomology(Options& o, Output& out) {
    AlgebraSignature sig = parse_signature(o.sig, "cohomology");
    MultiDerivation psi = parse_multiderivation(take(o, o.psi, "psi"), sig);
    const int nmax = o.nmax >= 0 ? o.nmax : 4;
    const int emax = o.emax >= 0 ? o.emax : 8;
    ParityFilter filter = parse_parity(o.parity);
    out.input = {{"sig", sig_string(sig)}, {"psi", to_string(psi, sig)}, {"nmax", nmax},
                 {"emax", emax},           {"parity", o.parity},         {"convention", o.convention}};
    auto chk = is_codifferential(psi, default_truncation(psi, psi));
    if (!chk.ok) {
        out.result["codifferential"] = false;
        out.result["residual"] = to_string(chk.residual, sig);
        out.code = kExitNegative;
        return;
    }
    CohomologyOptions opt;
    opt.deformation_convention = o.convention;
    CohomologyTable t = cohomology_table(psi, nmax, emax, filter, opt);
    out.result["filtered"] = t.filtered;
    Json slices = Json::array();
    for (const auto& [spec, r] : t.slices) slices.push_back(slice_json(spec, r, sig));
    Json totals = Json::array();
    std::ostringstream txt;
    txt << (t.filtered ? "filtered " : "") << "cohomology of " << to_string(psi, sig) << " (" << sig_string(sig)
        << ")\n";
    txt << std::setw(3) << "n" << std::setw(7) << "parity" << std::setw(7) << "total" << "  dims e=0.." << emax << "\n";
    for (const auto& [key, unstable] : t.unstable_in_e) {
        Json tj;
        tj["n"] = key.first;
        tj["parity"] = parity_name(key.second);
        tj["total"] = t.total(key.first, key.second);
        tj["stable_in_e"] = !unstable;
        totals.push_back(tj);
        txt << std::setw(3) << key.first << std::setw(7) << parity_name(key.second) << std::setw(7)
            << t.total(key.first, key.second) << (unstable ? "+ " : "  ");
        for (int e = 0; e <= emax; ++e)
            txt << " " << t.slices.at(SliceSpec{sig.m, sig.n, key.first, key.second, e}).dim_h;
        txt << "\n";
    }
    out.result["slices"] = slices;
    out.result["totals"] = totals;
    if (o.pretty) out.text = txt.str();
}

std::string module_string(const Generator& g) {
    if (g.module == ModuleType::KxQuotient) return "K[x]/(" + upoly_string(g.modulus) + ")";
    return to_string(g.module);
}

void cmd_closedform(Options& o, Output& out) {
    MultiDerivation psi;
    AlgebraSignature sig;
    if (!o.b.empty()) {
        sig = signature_or(o, 2, 1, "closedform");
        psi = build_psi_b(parse_polynomial(o.b, AlgebraSignature(2, 0)));
    } else {
        sig = parse_signature(o.sig, "closedform");
        psi = parse_multiderivation(take(o, o.psi, "psi"), sig);
    }
    const int nmax = o.nmax >= 0 ? o.nmax : 5;
    const int emax = o.emax >= 0 ? o.emax : 8;
    out.input = {{"sig", sig_string(sig)}, {"psi", to_string(psi, sig)}, {"nmax", nmax},
                 {"emax", emax},           {"convention", o.convention}};
    ClosedFormMatch m = closed_form_for(psi, o.convention, nmax);
    if (!m.list) {
        out.result["available"] = false;
        out.result["reason"] = m.reason;
        out.code = kExitNegative;
        return;
    }
    out.result["available"] = true;
    out.result["family"] = m.family;
    if (m.family == "0|1") {
        out.result["k"] = m.k;
        out.result["normal_form"] = to_string(psi_0_1(m.k), sig);
    } else if (m.family == "2|1 psi_b") {
        out.result["b"] = to_string(m.b, AlgebraSignature(2, 0));
    } else {
        out.result["k"] = m.k;
        out.result[m.family == "1|1 first kind" ? "g" : "f"] = upoly_string(m.poly);
    }
    std::optional<CohomologyTable> brute;
    if (o.verify) {
        CohomologyOptions opt;
        opt.deformation_convention = o.convention;
        brute = cohomology_table(m.list->psi, nmax, emax, ParityFilter::Both, opt);
    }
    bool agree = true;
    std::ostringstream txt;
    txt << m.family << " closed form for " << to_string(psi, sig) << "\n";
    Json spaces = Json::array();
    for (const auto& s : m.list->spaces) {
        Json sj;
        sj["n"] = s.n;
        sj["parity"] = parity_name(s.parity);
        sj["closed_form"] = s.closed_form;
        if (!s.note.empty()) sj["note"] = s.note;
        Json gens = Json::array();
        txt << "H^" << s.n << "_" << (s.parity ? "o" : "e") << " = ";
        if (!s.closed_form) txt << "(" << s.note << ")";
        else if (s.generators.empty()) txt << "0";
        bool first = true;
        for (const auto& g : s.generators) {
            Json gj;
            gj["element"] = to_string(g.element, m.list->sig);
            gj["module"] = module_string(g);
            gj["degree"] = g.degree;
            if (g.module == ModuleType::Kb) gj["step"] = g.step;
            if (!g.action_note.empty()) gj["action"] = g.action_note;
            gens.push_back(gj);
            txt << (first ? "" : " + ") << module_string(g) << "*(" << to_string(g.element, m.list->sig) << ")";
            first = false;
        }
        txt << "\n";
        sj["generators"] = gens;
        if (s.closed_form) {
            Json dims = Json::array();
            for (int e = 0; e <= emax; ++e) dims.push_back(s.dimension_at(e));
            sj["dims"] = dims;
            if (brute) {
                Json bd = Json::array();
                bool ok = true;
                for (int e = 0; e <= emax; ++e) {
                    int h = brute->slices.at(SliceSpec{sig.m, sig.n, s.n, s.parity, e}).dim_h;
                    bd.push_back(h);
                    ok = ok && h == s.dimension_at(e);
                }
                sj["brute_force_dims"] = bd;
                sj["agree"] = ok;
                agree = agree && ok;
            }
        }
        spaces.push_back(sj);
    }
    out.result["spaces"] = spaces;
    if (brute) {
        out.result["verified"] = agree;
        txt << "brute force " << (agree ? "agrees" : "DISAGREES") << " for e <= " << emax << "\n";
        if (!agree) out.code = kExitNegative;
    }
    if (o.pretty) out.text = txt.str();
}

void cmd_milnor(Options& o, Output& out) {
    AlgebraSignature sig = signature_or(o, 2, 0, "milnor");
    GradedPolynomial b = parse_polynomial(take(o, o.b, "b"), sig);
    out.input = {{"b", to_string(b, sig)}};
    MilnorData md = milnor_basis(b);
    out.result["mu"] = md.mu;
    Json basis = Json::array();
    for (const auto& u : md.basis) basis.push_back(to_string(u, sig));
    out.result["basis"] = basis;
    out.result["degree"] = md.degree;
    out.result["basis_degrees"] = md.basis_degree;
    out.result["quotient_dims"] = md.quotient_dims;
}

void cmd_casimir(Options& o, Output& out) {
    AlgebraSignature sig = parse_signature(o.sig, "casimir");
    MultiDerivation psi = parse_multiderivation(take(o, o.psi, "psi"), sig);
    GradedPolynomial alpha = parse_polynomial(take(o, o.alpha, "alpha"), sig);
    out.input = {{"sig", sig_string(sig)}, {"psi", to_string(psi, sig)}, {"alpha", to_string(alpha, sig)}};
    MultiDerivation r = casimir_residual(psi, alpha);
    out.result["casimir"] = r.is_zero();
    out.result["residual"] = to_string(r, sig);
    out.code = r.is_zero() ? kExitOk : kExitNegative;
}

void cmd_classify01(Options& o, Output& out) {
    AlgebraSignature sig = signature_or(o, 0, 1, "classify01");
    MultiDerivation psi = parse_multiderivation(take(o, o.psi, "psi"), sig);
    const int trunc = o.nmax >= 0 ? o.nmax : std::max(psi.max_symbols(), 2 * psi.min_symbols() + 2);
    out.input = {{"psi", to_string(psi, sig)}, {"max_symbols", trunc}};
    Normal01 nf = classify_0_1(psi);
    out.result["k"] = nf.order;
    out.result["leading"] = to_string(nf.leading);
    out.result["normal_form"] = to_string(psi_0_1(nf.order), sig);
    out.result["eliminated"] = to_string(eliminate_0_1(psi, trunc), sig);
}

void cmd_equiv11(Options& o, Output& out) {
    AlgebraSignature sig(1, 0);
    GradedPolynomial g1 = parse_polynomial(take(o, o.g1, "g1"), sig);
    GradedPolynomial g2 = parse_polynomial(take(o, o.g2, "g2"), sig);
    out.input = {{"g1", to_string(g1, sig)}, {"g2", to_string(g2, sig)}, {"k", o.k}};
    auto r = equivalent_1_1_first_kind(to_upoly(g1, 0), to_upoly(g2, 0), o.k);
    switch (r.status) {
        case Equivalence11::Status::Equivalent:
            out.result["status"] = "equivalent";
            out.result["A"] = to_string(r.A);
            out.result["B"] = to_string(r.B);
            out.result["C"] = to_string(r.C);
            break;
        case Equivalence11::Status::None:
            out.result["status"] = "none";
            out.code = kExitNegative;
            break;
        case Equivalence11::Status::Unknown:
            out.result["status"] = "unknown";
            break;
    }
    if (!r.reason.empty()) out.result["reason"] = r.reason;
}

void cmd_mc(Options& o, Output& out) {
    AlgebraSignature sig = parse_signature(o.sig, "mc");
    MultiDerivation psi = parse_multiderivation(take(o, o.psi, "psi"), sig);
    MultiDerivation alpha = parse_multiderivation(take(o, o.alpha, "alpha"), sig);
    int trunc = o.nmax >= 0 ? o.nmax
                            : std::max(default_truncation(psi, alpha), default_truncation(alpha, alpha));
    out.input = {{"sig", sig_string(sig)},
                 {"psi", to_string(psi, sig)},
                 {"alpha", to_string(alpha, sig)},
                 {"max_symbols", trunc}};
    MultiDerivation r = maurer_cartan_residual(psi, alpha, trunc);
    out.result["maurer_cartan"] = r.is_zero();
    out.result["residual"] = to_string(r, sig);
    out.code = r.is_zero() ? kExitOk : kExitNegative;
}

void add_common(CLI::App* c, Options& o) {
    c->add_option("--sig", o.sig, "signature m,n (m even, n odd variables)");
    c->add_option("--in", o.in, "read the main expression from a file");
    c->add_option("--out", o.out, "write the JSON result to a file");
    c->add_flag("--pretty", o.pretty, "human-readable output");
    c->add_option("exprs", o.positional, "expressions");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& os, std::ostream& err) {
    Options o;
    CLI::App app{"gp: Poisson superalgebra cohomology calculator", "gp"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "is psi a codifferential ({psi,psi} = 0)");
    add_common(check, o);
    check->add_option("--psi", o.psi, "multiderivation");
    check->add_option("--nmax", o.nmax, "truncate the residual at this many symbols");

    auto* bracket = app.add_subcommand("bracket", "Schouten bracket [a,b]");
    auto* mbracket = app.add_subcommand("mbracket", "modified bracket {a,b}");
    for (auto* c : {bracket, mbracket}) {
        add_common(c, o);
        c->add_option("--a", o.a, "first argument");
        c->add_option("--b", o.b, "second argument");
    }

    auto* coh = app.add_subcommand("cohomology", "brute-force cohomology table");
    add_common(coh, o);
    coh->add_option("--psi", o.psi, "codifferential");
    coh->add_option("--nmax", o.nmax, "largest number of symbols (default 4)");
    coh->add_option("--emax", o.emax, "largest coefficient degree (default 8)");
    coh->add_option("--parity", o.parity, "odd, even or both");
    coh->add_flag("--convention", o.convention, "drop coboundaries of odd 0-cochains");

    auto* cf = app.add_subcommand("closedform", "closed-form cohomology (0|1, 1|1, 2|1 psi_b)");
    add_common(cf, o);
    cf->add_option("--psi", o.psi, "codifferential");
    cf->add_option("--b", o.b, "build psi_b from b in K[x,y]");
    cf->add_option("--nmax", o.nmax, "largest number of symbols (default 5)");
    cf->add_option("--emax", o.emax, "dimension table up to this degree (default 8)");
    cf->add_flag("--convention", o.convention, "drop coboundaries of odd 0-cochains");
    cf->add_flag("--verify", o.verify, "compare with the brute-force table");

    auto* milnor = app.add_subcommand("milnor", "Milnor algebra basis of b in K[x,y]");
    add_common(milnor, o);
    milnor->add_option("--b", o.b, "homogeneous square-free polynomial");

    auto* cas = app.add_subcommand("casimir", "residual [psi, alpha] for alpha in A");
    add_common(cas, o);
    cas->add_option("--psi", o.psi, "codifferential");
    cas->add_option("--alpha", o.alpha, "algebra element");

    auto* c01 = app.add_subcommand("classify01", "normal form of a codifferential on K[th]");
    add_common(c01, o);
    c01->add_option("--psi", o.psi, "codifferential");
    c01->add_option("--nmax", o.nmax, "truncation for the elimination");

    auto* eq = app.add_subcommand("equiv11", "g2(x) = C g1(Ax+B) for first-kind 1|1 structures");
    add_common(eq, o);
    eq->add_option("--g1", o.g1, "polynomial in x");
    eq->add_option("--g2", o.g2, "polynomial in x");
    eq->add_option("--k", o.k, "order k of g Dth^k")->check(CLI::PositiveNumber);

    auto* mc = app.add_subcommand("mc", "Maurer-Cartan residual D(alpha) + 1/2 {alpha,alpha}");
    add_common(mc, o);
    mc->add_option("--psi", o.psi, "codifferential");
    mc->add_option("--alpha", o.alpha, "odd multiderivation");
    mc->add_option("--nmax", o.nmax, "truncate at this many symbols");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, os, err);
            return kExitOk;
        }
        err << "gp: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Output out;
    try {
        if (name == "check") cmd_check(o, out);
        else if (name == "bracket") cmd_bracket(o, out, false);
        else if (name == "mbracket") cmd_bracket(o, out, true);
        else if (name == "cohomology") cmd_cohomology(o, out);
        else if (name == "closedform") cmd_closedform(o, out);
        else if (name == "milnor") cmd_milnor(o, out);
        else if (name == "casimir") cmd_casimir(o, out);
        else if (name == "classify01") cmd_classify01(o, out);
        else if (name == "equiv11") cmd_equiv11(o, out);
        else if (name == "mc") cmd_mc(o, out);
        if (o.next_positional < o.positional.size()) throw UsageError("unexpected argument " + o.positional[o.next_positional]);
    } catch (const UsageError& e) {
        err << "gp " << name << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "gp " << name << ": parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AlgebraError& e) {
        out.result = Json::object();
        out.result["error"] = e.what();
        out.code = kExitNegative;
    }

    Json doc;
    doc["command"] = name;
    doc["input"] = out.input;
    doc["result"] = out.result;
    const std::string json = doc.dump(o.pretty && out.text.empty() ? 2 : -1) + "\n";
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) {
            err << "gp: cannot write " << o.out << "\n";
            return kExitUsage;
        }
        f << json;
        if (!out.text.empty()) os << out.text;
    } else {
        os << (out.text.empty() ? json : out.text);
    }
    return out.code;
}

}  // namespace gp
