#include "seqspace/cli.hpp"

#include "seqspace/duality.hpp"
#include "seqspace/error.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/matrix.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/suites.hpp"
#include "seqspace/triangle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

namespace seqspace::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string space, seq, op, matrix, from, to, cls, kind, suite;
    std::int64_t n = 0;
    std::int64_t probe = 128;
    std::int64_t trials = 100;
    std::uint64_t seed = 1;
    bool json = false;
};

struct Report {
    json payload;
    std::string certificate;
    std::vector<std::string> text;  // human-readable body
    int exit = exit_member;
};

json scalar_json(const Scalar& x) { return to_string(x); }

json scalars_json(const std::vector<Scalar>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

std::string bracket(const std::vector<Scalar>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
    return s + "]";
}

json verdict_json(const Verdict& v) {
    json j;
    j["status"] = std::string(to_string(v.status));
    j["rule"] = v.rule;
    j["value"] = v.value ? json(to_string(*v.value)) : json(nullptr);
    j["certificate"] = v.certificate;
    json trace = json::array();
    for (const auto& p : v.trace) trace.push_back(json{{"index", p.index}, {"value", to_string(p.value)}});
    j["trace"] = trace;
    json checks = json::array();
    for (const auto& [name, sub] : v.checks) checks.push_back(json{{"name", name}, {"verdict", verdict_json(sub)}});
    j["checks"] = checks;
    return j;
}

void verdict_text(const Verdict& v, std::vector<std::string>& out, const std::string& indent = "") {
    out.push_back(indent + "status: " + std::string(to_string(v.status)));
    if (!v.rule.empty()) out.push_back(indent + "rule: " + v.rule);
    if (v.value) out.push_back(indent + "value: " + to_string(*v.value));
    if (!v.certificate.empty()) out.push_back(indent + "certificate: " + v.certificate);
    if (!v.trace.empty()) {
        std::string t = indent + "trace:";
        for (const auto& p : v.trace) t += " " + std::to_string(p.index) + "=" + to_string(p.value);
        out.push_back(t);
    }
    for (const auto& [name, sub] : v.checks) {
        out.push_back(indent + "- " + name);
        verdict_text(sub, out, indent + "    ");
    }
}

int status_exit(Status s) {
    switch (s) {
    case Status::Member: return exit_member;
    case Status::NonMember: return exit_non_member;
    case Status::Inconclusive: return exit_inconclusive;
    }
    return exit_failure;
}

Report verdict_report(const Verdict& v) {
    Report r;
    r.payload = verdict_json(v);
    r.certificate = v.certificate;
    verdict_text(v, r.text);
    r.exit = status_exit(v.status);
    return r;
}

// inv:<op> inverts on the requested rows.
TriangleOp operator_for(const std::string& text, std::int64_t rows) {
    std::string_view s = text;
    if (s.substr(0, 4) == "inv:") return invert(parse_operator(s.substr(4)), rows);
    return parse_operator(s);
}

Report do_transform(const Options& o) {
    TriangleOp op = operator_for(o.op, o.n);
    Seq x = parse_seq(o.seq);
    std::vector<Scalar> y = apply_block(op, x, o.n).head(o.n);
    Report r;
    r.payload = json{{"op", op.name()}, {"seq", to_literal(x)}, {"n", o.n}, {"values", scalars_json(y)}};
    r.certificate = "rows 1.." + std::to_string(o.n) + " of " + op.name() + " applied exactly";
    r.text.push_back(bracket(y));
    return r;
}

Report do_norm(const Options& o) {
    SpaceId s = parse_space(o.space);
    Seq x = parse_seq(o.seq);
    Scalar v = norm(s, x);
    Report r;
    r.payload = json{{"space", to_string(s)}, {"seq", to_literal(x)}, {"norm", scalar_json(v)}};
    r.certificate = "exact norm in " + to_string(s);
    r.text.push_back(to_string(v));
    return r;
}

Report do_member(const Options& o) { return verdict_report(member(parse_space(o.space), parse_seq(o.seq), o.probe)); }

Report do_dual_check(const Options& o) {
    SpaceId s = parse_space(o.space);
    DualKind k = parse_dual_kind(o.kind);
    Seq a = parse_seq(o.seq);
    Verdict analytic = dual_member(s, k, a, o.probe);
    Verdict matrix = dual_member_via_matrix(s, k, a, o.probe);
    Verdict v;
    v.rule = "a in [" + to_string(s) + "]^" + std::string(to_string(k)) + " = " + to_string(dual_space(s, k));
    const Verdict& lead = analytic.status != Status::Inconclusive ? analytic : matrix;
    v.status = lead.status;
    v.value = lead.value;
    v.certificate = lead.certificate;
    v.trace = lead.trace.empty() ? matrix.trace : lead.trace;
    v.checks = {{"analytic", analytic}, {"matrix", matrix}};
    if (analytic.status != Status::Inconclusive && matrix.status != Status::Inconclusive &&
        analytic.status != matrix.status)
        throw Error(ErrorCode::Unsupported, "analytic and matrix paths disagree");
    return verdict_report(v);
}

Report do_classify(const Options& o) {
    return verdict_report(class_check(parse_matrix(o.matrix), parse_space(o.from), parse_space(o.to), o.probe));
}

// --class 'int_bv:linf', or a corollary item 'source:int_bv:ii'.
Report do_reduce(const Options& o) {
    Matrix a = parse_matrix(o.matrix);
    std::string_view c = o.cls;
    if (c.substr(0, 7) == "source:" || c.substr(0, 7) == "target:") {
        auto cut = c.rfind(':');
        if (cut < 7) throw Error(ErrorCode::Parse, "cannot parse '" + o.cls + "'; expected (source|target):(int_bv|d_bv):<item>");
        return verdict_report(corollary_suite(parse_corollary_family(c.substr(0, cut)), a, c.substr(cut + 1), o.probe));
    }
    return verdict_report(reduce_and_check(a, parse_class(c), o.probe));
}

Report do_basis(const Options& o) {
    SpaceId s = parse_space(o.space);
    Report r;
    if (!o.seq.empty()) {
        Seq x = parse_seq(o.seq);
        std::vector<Scalar> c = expansion_coefficients(s, x, o.n).head(o.n);
        Scalar defect = ak_defect(s, x, o.n);
        r.payload = json{{"space", to_string(s)}, {"seq", to_literal(x)}, {"n", o.n},
                         {"coefficients", scalars_json(c)}, {"ak_defect", scalar_json(defect)},
                         {"section_defect", scalar_json(section_defect(s, x, o.n))}};
        r.certificate = "coefficients are the transform of x; ak_defect is the l1 tail of the transform beyond n";
        r.text.push_back("coefficients: " + bracket(c));
        r.text.push_back("ak_defect: " + to_string(defect));
        return r;
    }
    BasisVector b = basis_vector(s, o.n);
    std::int64_t rows = 2 * o.n;
    std::vector<Scalar> image = expansion_coefficients(s, b.realization, rows).head(rows);
    bool unit = image == Seq::unit(o.n).head(rows);
    r.payload = json{{"space", to_string(s)}, {"index", o.n}, {"realization", to_literal(b.realization)},
                     {"image", scalars_json(image)}, {"unit", unit}};
    r.certificate = "transform of the basis vector on rows 1.." + std::to_string(rows);
    r.text.push_back(to_literal(b.realization));
    r.text.push_back("image: " + bracket(image));
    if (!unit) r.exit = exit_failure;
    return r;
}

Report do_verify(const Options& o) {
    SuiteSummary s = verify_suite(o.suite, o.trials, o.probe, o.seed);
    Report r;
    json failures = json::array();
    for (const auto& f : s.failures)
        failures.push_back(json{{"check", f.check}, {"trial", f.trial}, {"seed", f.seed}, {"detail", f.detail}});
    r.payload = json{{"suite", s.name}, {"trials", s.trials}, {"checks", s.checks},
                     {"failures", failures}, {"passed", s.passed()}};
    r.certificate = std::to_string(s.checks - static_cast<std::int64_t>(s.failures.size())) + "/" +
                    std::to_string(s.checks) + " exact checks held";
    r.text.push_back(s.name + ": " + r.certificate + " over " + std::to_string(s.trials) + " trials");
    for (const auto& f : s.failures)
        r.text.push_back("FAIL " + f.check + " (trial " + std::to_string(f.trial) + ", seed " + std::to_string(f.seed) +
                         "): " + f.detail);
    char buf[64];
    std::snprintf(buf, sizeof buf, "wall time: %.3f s", s.wall_seconds);
    r.text.push_back(buf);
    r.exit = s.passed() ? exit_member : exit_non_member;
    return r;
}

void emit(std::ostream& out, const Options& o, const std::string& verb, const std::vector<std::string>& args,
          const Report& r) {
    if (o.json) {
        json doc;
        doc["command"] = json{{"verb", verb}, {"args", args}};
        doc["payload"] = r.payload;
        doc["certificate"] = r.certificate;
        doc["probe"] = o.probe;
        doc["seed"] = o.seed;
        doc["version"] = std::string(version);
        doc["exact"] = true;
        out << doc.dump(2) << "\n";
        return;
    }
    for (const auto& line : r.text) out << line << "\n";
}

Report error_report(std::string_view code, const std::string& message, int exit) {
    Report r;
    r.payload = json{{"error", std::string(code)}, {"message", message}};
    r.text.push_back("error: " + std::string(code) + ": " + message);
    r.exit = exit;
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
    Options o;
    CLI::App app{"Exact sequence-space and matrix-class toolkit", "seqspace"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    std::map<std::string, std::function<Report(const Options&)>> handlers;
    auto verb = [&](const std::string& name, const std::string& help, std::function<Report(const Options&)> fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_flag("--json", o.json, "emit a JSON report");
        sub->add_option("--probe", o.probe, "bound for every enumeration (default 128)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed echoed in reports and used by suites");
        handlers[name] = std::move(fn);
        return sub;
    };
    const char* seq_help = "finite:[..] | const:c | powerlaw:c,p | geom:c,r | alt:c | pgeom:c,p,r [;prefix:[..]]";
    const char* space_help = "l1 linf c c0 bv bs cs c0s with optional int_ / d_ prefix";

    auto* t = verb("transform", "apply a triangle to a sequence", do_transform);
    t->add_option("--op", o.op, "operator literal, or inv:<operator>")->required();
    t->add_option("--seq", o.seq, seq_help)->required();
    t->add_option("--n", o.n, "number of rows")->required()->check(CLI::PositiveNumber);

    auto* nm = verb("norm", "exact norm", do_norm);
    nm->add_option("--space", o.space, space_help)->required();
    nm->add_option("--seq", o.seq, seq_help)->required();

    auto* mb = verb("member", "membership verdict", do_member);
    mb->add_option("--space", o.space, space_help)->required();
    mb->add_option("--seq", o.seq, seq_help)->required();

    auto* dc = verb("dual-check", "alpha/beta/gamma dual membership", do_dual_check);
    dc->add_option("--space", o.space, "int_bv | d_bv")->required();
    dc->add_option("--kind", o.kind, "alpha | beta | gamma")->required();
    dc->add_option("--seq", o.seq, seq_help)->required();

    auto* cl = verb("classify", "matrix class membership (X:Y)", do_classify);
    cl->add_option("--matrix", o.matrix, "matrix literal")->required();
    cl->add_option("--from", o.from, space_help)->required();
    cl->add_option("--to", o.to, space_help)->required();

    auto* rd = verb("reduce", "class involving int_bv or d_bv via derived matrices", do_reduce);
    rd->add_option("--matrix", o.matrix, "matrix literal")->required();
    rd->add_option("--class", o.cls, "X:Y, or (source|target):(int_bv|d_bv):<item>")->required();

    auto* bs = verb("basis", "basis vector, or expansion coefficients of --seq", do_basis);
    bs->add_option("--space", o.space, "int_bv | d_bv")->required();
    bs->add_option("--n", o.n, "basis index, or number of coefficients")->required()->check(CLI::PositiveNumber);
    bs->add_option("--seq", o.seq, seq_help);

    auto* vf = verb("verify", "run a seeded property suite", do_verify);
    vf->add_option("--suite", o.suite, "isometry | ak | monotone | basis | domain-identities | duals | reductions | corollaries")
        ->required();
    vf->add_option("--trials", o.trials, "number of seeded trials (default 100)")->check(CLI::PositiveNumber);

    std::string chosen = args.empty() ? std::string() : args.front();
    Report report;
    try {
        if (!chosen.empty() && chosen.front() != '-' && !handlers.count(chosen)) {
            std::string known;
            for (const auto& [name, fn] : handlers) known += (known.empty() ? "" : " | ") + name;
            throw CLI::ParseError("unknown verb '" + chosen + "'; expected " + known, exit_usage);
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        chosen = app.get_subcommands().front()->get_name();
        report = handlers.at(chosen)(o);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_member;
    } catch (const CLI::CallForVersion&) {
        out << version << "\n";
        return exit_member;
    } catch (const CLI::ParseError& e) {
        report = error_report("Usage", e.what(), exit_usage);
    } catch (const Error& e) {
        bool usage = e.code() == ErrorCode::Parse || e.code() == ErrorCode::UnknownSuite;
        report = error_report(to_string(e.code()), e.what(), usage ? exit_usage : exit_failure);
    } catch (const std::exception& e) {
        report = error_report("Internal", e.what(), exit_failure);
    }
    emit(out, o, chosen, args, report);
    return report.exit;
}

} // namespace seqspace::cli
