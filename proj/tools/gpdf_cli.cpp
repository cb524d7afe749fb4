#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpdf/gpdf.hpp"

namespace {

using namespace gpdf;

enum Exit : int {
    ok = 0,
    verify_failure = 1,
    parse_error = 2,
    infeasible = 3,
    unknown = 4,
    external = 5,
    budget = 6,
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success (verified, found, built)\n"
    "  1  verification failure\n"
    "  2  parse error or invalid arguments\n"
    "  3  infeasible (exhausted search or failed necessary condition)\n"
    "  4  unknown (open case)\n"
    "  5  external dependency required\n"
    "  6  budget exceeded\n";

struct BudgetFlags {
    std::uint64_t nodes = 0;
    double seconds = 0;
    int parallel = 1;

    void attach(CLI::App* app) {
        app->add_option("--nodes", nodes, "node budget per search (0 = unlimited)");
        app->add_option("--seconds", seconds, "time budget per search in seconds (0 = unlimited)");
        app->add_option("--parallel", parallel, "worker threads for search")->check(CLI::PositiveNumber);
    }

    SearchBudget budget() const {
        SearchBudget b;
        if (nodes > 0) b.nodes = nodes;
        if (seconds > 0) b.seconds = seconds;
        b.parallel = parallel;
        return b;
    }
};

std::string read_input(const std::string& path) {
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (auto text = embedded_text(std::filesystem::path(path).filename().string())) return std::string(*text);
    throw CatalogParseError(0, "cannot open " + path);
}

std::vector<CatalogEntry> read_entries(const std::string& path) { return parse_catalog(read_input(path)); }

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

const DiffFamily& first_family(const std::vector<CatalogEntry>& entries, const std::string& path) {
    for (const auto& e : entries) {
        if (e.kind == Kind::gen_pdf || e.kind == Kind::gen_pdp) return e.family();
    }
    throw InvalidInput(path + " holds no gen_pdf or gen_pdp entry");
}

int exit_for(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::planned:
        case OutcomeKind::built: return Exit::ok;
        case OutcomeKind::infeasible: return Exit::infeasible;
        case OutcomeKind::unknown: return Exit::unknown;
        case OutcomeKind::external_dependency: return Exit::external;
        case OutcomeKind::budget_exceeded: return Exit::budget;
    }
    return Exit::unknown;
}

int exit_for(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return Exit::ok;
        case SearchStatus::exhausted: return Exit::infeasible;
        case SearchStatus::budget_exceeded: return Exit::budget;
    }
    return Exit::unknown;
}

// ---- verify ----

int cmd_verify(const std::string& path, bool expect_leave) {
    std::vector<CatalogEntry> entries;
    try {
        entries = read_entries(path);
    } catch (const CatalogParseError& e) {
        std::cout << path << ": parse error at line " << e.line() << ": " << e.what() << '\n';
        return Exit::parse_error;
    }
    std::size_t good = 0;
    for (const auto& e : entries) {
        std::string failure = check_entry(e);
        const bool is_family = e.kind == Kind::gen_pdf || e.kind == Kind::gen_pdp;
        if (failure.empty() && expect_leave && is_family && !e.params.leave) failure = "no declared leave";
        std::cout << "line " << e.line << ' ' << e.label() << ": ";
        if (failure.empty()) {
            ++good;
            std::cout << "ok";
            if (expect_leave && is_family) std::cout << " leave=" << e.params.leave->to_string();
        } else {
            std::cout << "FAIL " << failure;
        }
        std::cout << '\n';
    }
    std::cout << good << '/' << entries.size() << " ok\n";
    return good == entries.size() ? Exit::ok : Exit::verify_failure;
}

// ---- search ----

struct SearchArgs {
    std::string what;
    int n = 0;
    int m = 1;
    int k = 0;
    int h = 0;
    int d = 1;
    std::string sizes;
    std::string leave;
    std::string out;
};

int cmd_search(const SearchArgs& a, const SearchBudget& budget) {
    std::optional<CatalogEntry> entry;
    SearchStatus status = SearchStatus::exhausted;
    std::uint64_t nodes = 0;
    auto take = [&](auto outcome, auto make) {
        status = outcome.status;
        nodes = outcome.nodes;
        if (outcome.design) entry = make(std::move(*outcome.design));
    };
    if (a.what == "pdp") {
        const SizeSet sizes = parse_sizes(a.sizes);
        const LeaveSpec leave = a.leave.empty() ? LeaveSpec::trivial() : parse_leave(a.leave);
        take(search_gen_pdp(sym_interval(a.n), sym_interval(a.m), sizes, leave, budget), [&](DiffFamily f) {
            const bool pdf = leave == LeaveSpec::trivial();
            return make_family_entry(pdf ? Kind::gen_pdf : Kind::gen_pdp, std::move(f), leave, "search");
        });
    } else if (a.what == "pdm") {
        take(search_pdm(a.k, a.m, budget), [](PDMatrix p) { return make_pdm_entry(std::move(p), "search"); });
    } else if (a.what == "mgdd") {
        const SizeSet sizes = parse_sizes(a.sizes);
        take(search_mgdd(sizes, a.k, a.h, budget),
             [&](MGDDInstance g) { return make_mgdd_entry(std::move(g), sizes, "search"); });
    } else {
        take(search_langford(a.n, a.d, budget),
             [](LangfordSeq s) { return make_langford_entry(std::move(s), "search"); });
    }
    std::cout << "status " << status_name(status) << " nodes " << nodes << '\n';
    if (entry) write_output(a.out, format_entry(*entry));
    return exit_for(status);
}

// ---- construct ----

struct ConstructArgs {
    std::string what;
    std::vector<std::string> inputs;
    int n = 0;
    int d = 1;
    std::string out;
};

int cmd_construct(const ConstructArgs& a, const SearchBudget& budget) {
    DiffFamily result;
    std::optional<LeaveSpec> leave;
    if (a.what == "transpose") {
        if (a.inputs.size() != 1) throw InvalidParameter("transpose takes one input file");
        result = transpose(first_family(read_entries(a.inputs[0]), a.inputs[0]));
    } else if (a.what == "compose") {
        if (a.inputs.size() != 2) throw InvalidParameter("compose takes OUTER and INNER files");
        const auto outer = read_entries(a.inputs[0]);
        const auto inner = read_entries(a.inputs[1]);
        result = compose_fill(first_family(outer, a.inputs[0]), first_family(inner, a.inputs[1]));
    } else if (a.what == "inflate") {
        if (a.inputs.size() < 2) throw InvalidParameter("inflate takes a 1D family file and SPGDD files");
        const auto base = read_entries(a.inputs[0]);
        IngredientMap ingredients;
        for (std::size_t i = 1; i < a.inputs.size(); ++i) {
            for (const auto& e : read_entries(a.inputs[i])) {
                if (e.kind != Kind::spgdd) continue;
                ingredients.emplace(static_cast<int>(e.spgdd().groups()), e.spgdd());
            }
        }
        result = inflate_by_spgdd(first_family(base, a.inputs[0]), ingredients);
    } else {
        const auto seq = search_langford(a.n, a.d, budget);
        if (!seq.found()) {
            std::cout << "status " << status_name(seq.status) << " nodes " << seq.nodes << '\n';
            return exit_for(seq.status);
        }
        result = langford_to_pdp(*seq.design);
        leave = LeaveSpec::one_dim(sym_interval(2 * a.d - 1), 1);
    }
    const auto report = verify_gen_pdp(result);
    if (!report.ok) {
        std::cout << "construction failed verification: " << report.describe() << '\n';
        return Exit::verify_failure;
    }
    const bool pdf = report.computed_leave.size() == 1;
    if (!leave && !pdf) {
        std::cout << "leave has " << report.computed_leave.size() << " elements\n";
    }
    write_output(a.out, format_entry(make_family_entry(pdf ? Kind::gen_pdf : Kind::gen_pdp, std::move(result), leave,
                                                       "construct " + a.what)));
    return Exit::ok;
}

// ---- plan / synth ----

struct TargetArgs {
    int n = 0;
    int m = 0;
    std::string sizes;
    std::string out;
};

void print_outcome(const PlanOutcome& o) {
    std::cout << "outcome " << outcome_name(o.kind);
    if (!o.reason.empty()) std::cout << ": " << o.reason;
    std::cout << '\n';
}

int cmd_plan(const TargetArgs& a) {
    const auto o = plan(a.n, a.m, parse_sizes(a.sizes));
    print_outcome(o);
    if (o.plan) std::cout << format_plan(*o.plan);
    return exit_for(o.kind);
}

int cmd_synth(const TargetArgs& a, const SearchBudget& budget) {
    const auto planned = plan(a.n, a.m, parse_sizes(a.sizes));
    const auto o = execute(planned, budget);
    print_outcome(o);
    const std::string plan_text = planned.plan ? format_plan(*planned.plan) : std::string();
    if (o.kind != OutcomeKind::built) {
        std::cout << plan_text;
        return exit_for(o.kind);
    }
    const std::string cite = planned.plan->root.cite.empty() ? "synth" : planned.plan->root.cite;
    const std::string design = format_entry(make_family_entry(Kind::gen_pdf, *o.design, std::nullopt, cite));
    if (a.out.empty() || a.out == "-") {
        std::cout << plan_text << design;
    } else {
        write_output(a.out, design);
        write_output(a.out + ".plan", plan_text);
        std::cout << "wrote " << a.out << " and " << a.out << ".plan\n";
    }
    return Exit::ok;
}

// ---- goc ----

// Codebook files: a header "goc n=<n> m=<m>" followed by list-format codewords.
std::string format_codebook(const GocCodebook& c) {
    return "goc n=" + std::to_string(c.n) + " m=" + std::to_string(c.m) + '\n' + export_goc(c, ExportFormat::list);
}

GocCodebook parse_codebook(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    GocCodebook c;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (std::sscanf(line.c_str(), "goc n=%d m=%d", &c.n, &c.m) != 2 || c.n < 1 || c.m < 1) {
                throw CatalogParseError(lineno, "expected header 'goc n=<n> m=<m>'");
            }
            header = true;
            continue;
        }
        std::vector<Point> pts;
        std::size_t pos = 0;
        while ((pos = line.find('(', pos)) != std::string::npos) {
            Point p;
            if (std::sscanf(line.c_str() + pos, "(%d,%d)", &p.x, &p.y) != 2) {
                throw CatalogParseError(lineno, "malformed point");
            }
            pts.push_back(p);
            ++pos;
        }
        if (pts.empty()) throw CatalogParseError(lineno, "codeword without points");
        c.codewords.emplace_back(std::move(pts));
    }
    if (!header) throw CatalogParseError(lineno, "missing goc header");
    return c;
}

struct GocArgs {
    std::string input;
    std::string format = "grid";
    std::string out;
    std::string pdf_out;
};

int cmd_goc_convert(const GocArgs& a) {
    const auto entries = read_entries(a.input);
    std::string text;
    for (const auto& e : entries) {
        if (e.kind != Kind::gen_pdf) continue;
        text += format_codebook(pdf_to_goc(e.family()));
    }
    if (text.empty()) throw InvalidInput(a.input + " holds no gen_pdf entry");
    write_output(a.out, text);
    return Exit::ok;
}

int cmd_goc_check(const GocArgs& a) {
    GocCodebook c;
    try {
        c = parse_codebook(read_input(a.input));
    } catch (const CatalogParseError& e) {
        std::cout << a.input << ": parse error at line " << e.line() << ": " << e.what() << '\n';
        return Exit::parse_error;
    }
    const auto r = verify_goc(c);
    if (!r.ok) {
        std::cout << "not perfect: " << r.violation << '\n';
        return Exit::verify_failure;
    }
    if (!weight_census_ok(c)) {
        std::cout << "not perfect: weights do not fill the shift grid\n";
        return Exit::verify_failure;
    }
    std::cout << "perfect (" << c.n << 'x' << c.m << ") codebook with " << c.codewords.size() << " codewords\n";
    if (!a.pdf_out.empty()) {
        write_output(a.pdf_out, format_entry(make_family_entry(Kind::gen_pdf, goc_to_pdf(c), std::nullopt, "goc")));
    }
    return Exit::ok;
}

int cmd_goc_export(const GocArgs& a) {
    const auto entries = read_entries(a.input);
    const auto format = a.format == "list" ? ExportFormat::list : ExportFormat::grid;
    std::string text;
    for (const auto& e : entries) {
        if (e.kind != Kind::gen_pdf) continue;
        if (!text.empty()) text += '\n';
        text += export_goc(pdf_to_goc(e.family()), format);
    }
    if (text.empty()) throw InvalidInput(a.input + " holds no gen_pdf entry");
    write_output(a.out, text);
    return Exit::ok;
}

// ---- catalog ----

struct CatalogArgs {
    std::string kind;
    std::string n;
    std::string m;
    std::string sizes;
    std::string leave;
    int k = 0;
    int d = 0;
};

int cmd_catalog_list(const CatalogArgs& a) {
    std::optional<Kind> kind;
    if (!a.kind.empty()) {
        kind = parse_kind(a.kind);
        if (!kind) throw InvalidParameter("unknown kind " + a.kind);
    }
    for (const auto& e : embedded_catalog().entries()) {
        if (kind && e.kind != *kind) continue;
        std::cout << e.label();
        if (!e.params.erratum.empty()) std::cout << " [erratum: " << e.params.erratum << ']';
        std::cout << '\n';
    }
    return Exit::ok;
}

int cmd_catalog_lookup(const CatalogArgs& a) {
    CatalogQuery q;
    const auto kind = parse_kind(a.kind.empty() ? "gen_pdf" : a.kind);
    if (!kind) throw InvalidParameter("unknown kind " + a.kind);
    q.kind = *kind;
    if (!a.n.empty()) q.n = parse_symmetric(a.n);
    if (!a.m.empty()) q.m = parse_symmetric(a.m);
    if (!a.sizes.empty()) q.sizes = parse_sizes(a.sizes);
    if (!a.leave.empty()) q.leave = parse_leave(a.leave);
    if (a.k > 0) q.rows = a.k;
    if (a.d > 0) q.defect = a.d;
    const auto hit = embedded_catalog().lookup(q);
    if (!hit) {
        std::cout << "no match\n";
        return Exit::unknown;
    }
    std::cout << format_entry(*hit);
    return Exit::ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized perfect difference family toolkit"};
    app.footer(kExitCodes);
    app.require_subcommand(1);
    int rc = Exit::ok;

    auto* verify = app.add_subcommand("verify", "verify every entry of a catalog file");
    std::string verify_path;
    bool expect_leave = false;
    verify->add_option("file", verify_path, "catalog file (or embedded catalog name)")->required();
    verify->add_flag("--expect-leave", expect_leave, "require and report a declared leave on every family");

    BudgetFlags budget_flags;

    auto* search = app.add_subcommand("search", "exhaustive search for a single design");
    SearchArgs sa;
    search->add_option("what", sa.what, "pdp, pdm, mgdd or langford")
        ->required()
        ->check(CLI::IsMember({"pdp", "pdm", "mgdd", "langford"}));
    search->add_option("-n", sa.n, "first axis [n], or Langford order");
    search->add_option("-m", sa.m, "second axis [m], or PDM width");
    search->add_option("-k", sa.k, "PDM rows or MGDD holes");
    search->add_option("--groups", sa.h, "MGDD groups");
    search->add_option("-d", sa.d, "Langford defect");
    search->add_option("-K", sa.sizes, "block sizes, e.g. 3,4,5");
    search->add_option("--leave", sa.leave, "leave spec such as [5]^4 or [3]x[5]^2");
    search->add_option("-o,--out", sa.out, "output file for the design");
    budget_flags.attach(search);

    auto* construct = app.add_subcommand("construct", "apply one construction to catalog inputs");
    ConstructArgs ca;
    construct->add_option("what", ca.what, "transpose, compose, inflate or langford")
        ->required()
        ->check(CLI::IsMember({"transpose", "compose", "inflate", "langford"}));
    construct->add_option("inputs", ca.inputs, "input catalog files");
    construct->add_option("-n", ca.n, "Langford order");
    construct->add_option("-d", ca.d, "Langford defect");
    construct->add_option("-o,--out", ca.out, "output file");
    budget_flags.attach(construct);

    TargetArgs ta;
    auto* plan_cmd = app.add_subcommand("plan", "print the construction plan without running it");
    auto* synth_cmd = app.add_subcommand("synth", "plan, build and verify a generalized PDF");
    for (auto* sub : {plan_cmd, synth_cmd}) {
        sub->add_option("-n", ta.n, "rows of [n] x [m]")->required()->check(CLI::PositiveNumber);
        sub->add_option("-m", ta.m, "columns of [n] x [m]")->required()->check(CLI::PositiveNumber);
        sub->add_option("-K", ta.sizes, "block sizes, e.g. 3,4,5")->required();
    }
    synth_cmd->add_option("-o,--out", ta.out, "design file; the plan goes to <file>.plan");
    budget_flags.attach(synth_cmd);

    auto* goc = app.add_subcommand("goc", "optical orthogonal code conversions");
    goc->require_subcommand(1);
    GocArgs ga;
    auto* convert = goc->add_subcommand("convert", "gen_pdf catalog entries to codebook files");
    convert->add_option("file", ga.input)->required();
    convert->add_option("-o,--out", ga.out);
    auto* check = goc->add_subcommand("check", "check a codebook file for perfection");
    check->add_option("file", ga.input)->required();
    check->add_option("--pdf", ga.pdf_out, "write the equivalent gen_pdf entry here");
    auto* exp = goc->add_subcommand("export", "render gen_pdf entries as codewords");
    exp->add_option("file", ga.input)->required();
    exp->add_option("--format", ga.format)->check(CLI::IsMember({"grid", "list"}));
    exp->add_option("-o,--out", ga.out);

    auto* catalog = app.add_subcommand("catalog", "inspect the embedded catalog");
    catalog->require_subcommand(1);
    CatalogArgs cat;
    auto* list = catalog->add_subcommand("list", "one line per embedded entry");
    list->add_option("--kind", cat.kind);
    auto* lookup = catalog->add_subcommand("lookup", "first entry matching the query");
    lookup->add_option("--kind", cat.kind);
    lookup->add_option("-n", cat.n);
    lookup->add_option("-m", cat.m);
    lookup->add_option("-K", cat.sizes);
    lookup->add_option("--leave", cat.leave);
    lookup->add_option("-k", cat.k, "PDM rows");
    lookup->add_option("-d", cat.d, "Langford defect");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::parse_error;
    }

    try {
        const auto budget = budget_flags.budget();
        if (*verify) rc = cmd_verify(verify_path, expect_leave);
        else if (*search) rc = cmd_search(sa, budget);
        else if (*construct) rc = cmd_construct(ca, budget);
        else if (*plan_cmd) rc = cmd_plan(ta);
        else if (*synth_cmd) rc = cmd_synth(ta, budget);
        else if (*convert) rc = cmd_goc_convert(ga);
        else if (*check) rc = cmd_goc_check(ga);
        else if (*exp) rc = cmd_goc_export(ga);
        else if (*list) rc = cmd_catalog_list(cat);
        else if (*lookup) rc = cmd_catalog_lookup(cat);
    } catch (const CatalogParseError& e) {
        std::cerr << "parse error at line " << e.line() << ": " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const NotPerfect& e) {
        std::cerr << e.what() << '\n';
        return Exit::verify_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::parse_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::verify_failure;
    }
    return rc;
}
