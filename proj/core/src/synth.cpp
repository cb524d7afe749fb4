#include "gpdf/synth.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "gpdf/catalog.hpp"
#include "gpdf/construct.hpp"
#include "gpdf/feasibility.hpp"
#include "gpdf/search.hpp"

namespace gpdf {

std::string_view op_name(StepOp op) {
    switch (op) {
        case StepOp::select: return "select";
        case StepOp::empty: return "empty";
        case StepOp::catalog: return "catalog";
        case StepOp::search_pdp: return "search-pdp";
        case StepOp::search_pdm: return "search-pdm";
        case StepOp::search_mgdd: return "search-mgdd";
        case StepOp::search_langford: return "search-langford";
        case StepOp::langford_pdp: return "langford-pdp";
        case StepOp::pdm_spgdd: return "pdm-spgdd";
        case StepOp::spmgdd: return "spmgdd";
        case StepOp::augment: return "augment";
        case StepOp::inflate: return "inflate";
        case StepOp::compose: return "compose";
        case StepOp::transpose: return "transpose";
        case StepOp::expand: return "expand";
    }
    return "?";
}

std::string_view outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::planned: return "planned";
        case OutcomeKind::built: return "built";
        case OutcomeKind::infeasible: return "infeasible";
        case OutcomeKind::unknown: return "unknown";
        case OutcomeKind::external_dependency: return "external-dependency";
        case OutcomeKind::budget_exceeded: return "budget-exceeded";
    }
    return "?";
}

bool TableRow::matches(int m) const {
    if (std::ranges::find(residues, m % 24) == residues.end()) return false;
    if (at_least > 0) return m >= at_least;
    return std::ranges::find(values, m) != values.end();
}

std::string TableRow::label() const {
    std::string s = "Table " + std::to_string(table) + " row m = ";
    for (std::size_t i = 0; i < residues.size(); ++i) s += (i ? "," : "") + std::to_string(residues[i]);
    s += " (mod 24), ";
    if (at_least > 0) {
        s += "m >= " + std::to_string(at_least);
    } else {
        s += "m in {";
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
        s += "}";
    }
    s += ", leave ";
    if (h == 0) s += "[m]";
    else s += "[" + std::to_string(h) + "]" + (r > 1 ? "^" + std::to_string(r) : "");
    return s;
}

const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows{
        {1, {1, 7}, 175, {}, 25, 1},
        {1, {1, 7}, 0, {79, 97, 103, 121, 127, 145, 151, 169}, 25, 3},
        {1, {1, 7}, 0, {73}, 19, 4},
        {1, {1, 7}, 0, {31, 49, 55}, 5, 4},
        {1, {1, 7}, 0, {7, 25}, 0, 1},
        {1, {3, 21}, 147, {}, 21, 1},
        {1, {3, 21}, 0, {69, 75, 93, 99, 117, 123, 141}, 21, 3},
        {1, {3, 21}, 0, {51}, 15, 3},
        {1, {3, 21}, 0, {21, 27, 45}, 0, 1},
        {1, {9, 15}, 105, {}, 15, 1},
        {1, {9, 15}, 0, {57, 63, 81, 87}, 15, 3},
        {1, {9, 15}, 0, {9, 15, 33, 39}, 0, 1},
        {1, {13, 19}, 133, {}, 19, 1},
        {1, {13, 19}, 0, {61, 67, 85, 91, 109, 115}, 19, 3},
        {1, {13, 19}, 0, {37, 43}, 5, 5},
        {1, {13, 19}, 0, {13, 19}, 0, 1},

        {2, {1, 7}, 49, {}, 7, 1},
        {2, {1, 7}, 0, {25, 31}, 7, 3},
        {2, {1, 7}, 0, {7}, 0, 1},
        {2, {3, 21}, 147, {}, 21, 1},
        {2, {3, 21}, 0, {45, 51, 69, 75, 93, 99, 117, 123, 141}, 9, 3},
        {2, {3, 21}, 0, {21, 27}, 0, 1},
        {2, {9, 15}, 63, {}, 9, 1},
        {2, {9, 15}, 0, {33, 39, 57}, 9, 3},
        {2, {9, 15}, 0, {9, 15}, 0, 1},
        {2, {13, 19}, 91, {}, 13, 1},
        {2, {13, 19}, 0, {37, 43, 61, 67, 85}, 7, 3},
        {2, {13, 19}, 0, {13, 19}, 0, 1},
        {2, {5, 11}, 77, {}, 11, 1},
        {2, {5, 11}, 0, {53, 59}, 11, 3},
        {2, {5, 11}, 0, {5, 11, 29, 35}, 0, 1},
        {2, {17, 23}, 119, {}, 17, 1},
        {2, {17, 23}, 0, {65, 71, 89, 95, 113}, 11, 3},
        {2, {17, 23}, 0, {41, 47}, 11, 4},
        {2, {17, 23}, 0, {17, 23}, 0, 1},

        {3, {1, 7}, 49, {}, 7, 1},
        {3, {1, 7}, 0, {25, 31}, 7, 3},
        {3, {1, 7}, 0, {7}, 0, 1},
        {3, {3, 21}, 315, {}, 45, 1},
        {3, {3, 21}, 0, {45, 51, 69, 75, 93, 99, 117, 123, 141, 147, 165, 171, 189, 195, 213, 219, 237, 243, 261, 267, 285, 291, 309}, 9, 3},
        {3, {3, 21}, 0, {21, 27}, 0, 1},
        {3, {9, 15}, 63, {}, 9, 1},
        {3, {9, 15}, 0, {33, 39, 57}, 9, 3},
        {3, {9, 15}, 0, {9, 15}, 0, 1},
        {3, {13, 19}, 133, {}, 19, 1},
        {3, {13, 19}, 0, {37, 43, 61, 67, 85, 91, 109, 115}, 7, 3},
        {3, {13, 19}, 0, {13, 19}, 0, 1},
        {3, {5, 11}, 35, {}, 5, 1},
        {3, {5, 11}, 0, {29}, 5, 3},
        {3, {5, 11}, 0, {5, 11}, 0, 1},
        {3, {17, 23}, 161, {}, 23, 1},
        {3, {17, 23}, 0, {41, 47, 65, 71, 89, 95, 113, 119, 137, 143}, 5, 3},
        {3, {17, 23}, 0, {23}, 5, 4},
        {3, {17, 23}, 0, {17}, 0, 1},
    };
    return rows;
}

const TableRow* find_row(int table, int m) {
    for (const auto& row : table_rows()) {
        if (row.table == table && row.matches(m)) return &row;
    }
    return nullptr;
}

const std::vector<std::string>& known_anchors() {
    static const std::vector<std::string> anchors = [] {
        std::vector<std::string> a{
            "Theorem 1.6",    "Theorem 1.7",      "Lemma 1.5",        "Lemma 2.4",        "Lemma 2.5",
            "Lemma 4.1",      "Lemma 4.2",        "Lemma 4.3",        "Lemma 4.4",        "Lemma 4.5",
            "Lemma 5.2",      "Lemma 5.3",        "Lemma 5.4",        "Lemma 5.7",        "Lemma 5.9",
            "Lemma 5.10",     "Lemma 5.11",       "Lemma 5.12",       "Construction 3.1", "Construction 3.2",
            "Construction 3.3", "Construction 3.4", "Construction 3.7", "Corollary 3.5",   "transpose symmetry",
            "trivial",        "desk-scale search",
        };
        for (const auto& e : embedded_catalog().entries()) a.push_back(e.params.source);
        for (const auto& row : table_rows()) a.push_back(row.label());
        std::ranges::sort(a);
        a.erase(std::unique(a.begin(), a.end()), a.end());
        return a;
    }();
    return anchors;
}

namespace {

void collect(const PlanStep& s, std::vector<std::string>& out) {
    out.push_back(s.cite);
    for (const auto& c : s.inputs) collect(c, out);
}

}  // namespace

std::vector<std::string> plan_citations(const Plan& p) {
    std::vector<std::string> out;
    collect(p.root, out);
    return out;
}

std::string format_step(const PlanStep& s, int indent) {
    std::ostringstream os;
    os << std::string(static_cast<std::size_t>(indent), ' ') << "step " << op_name(s.op);
    const auto& p = s.params;
    if (s.role) os << " for=" << s.role;
    if (p.n) os << " n=" << p.n;
    if (p.m) os << " m=" << p.m;
    if (p.k) os << " k=" << p.k;
    if (p.h) os << " h=" << p.h;
    if (p.d) os << " d=" << p.d;
    if (!p.sizes.empty()) os << " K=" << format_sizes(p.sizes);
    if (p.leave) os << " leave=" << p.leave->to_string();
    if (!p.source.empty()) os << " source=\"" << p.source << "\"";
    os << " cite=\"" << s.cite << "\"\n";
    for (const auto& c : s.inputs) os << format_step(c, indent + 2);
    return os.str();
}

std::string format_plan(const Plan& p) {
    return "plan n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) + " K=" + format_sizes(p.sizes) + "\n" +
           format_step(p.root, 2);
}

namespace {

const std::vector<int> kLemma512Small{23, 29, 35};
const std::vector<int> kLemma512Large{41, 47, 53};
constexpr int kSmallSearchCells = 125;
constexpr int kMaxDepth = 8;

struct Route {
    std::optional<PlanStep> step;
    OutcomeKind fail = OutcomeKind::unknown;
    std::string reason;

    static Route ok(PlanStep s) { return {std::move(s), OutcomeKind::unknown, {}}; }
    static Route no(OutcomeKind k, std::string why) { return {std::nullopt, k, std::move(why)}; }
    explicit operator bool() const { return step.has_value(); }
};

PlanStep make_step(StepOp op, StepParams p, std::string cite, std::vector<PlanStep> inputs = {}) {
    PlanStep s;
    s.op = op;
    s.params = std::move(p);
    s.cite = std::move(cite);
    s.inputs = std::move(inputs);
    return s;
}

PlanStep with_role(PlanStep s, int role) {
    s.role = role;
    return s;
}

PlanStep wrap(StepOp op, int n, int m, const SizeSet& sizes, std::string cite, PlanStep child) {
    StepParams p;
    p.n = n;
    p.m = m;
    p.sizes = sizes;
    return make_step(op, std::move(p), std::move(cite), {std::move(child)});
}

SymmetricSet axis(int v) { return sym_interval(v); }

bool subset(const SizeSet& a, const SizeSet& b) { return std::ranges::includes(b, a); }

bool in(const std::vector<int>& v, int x) { return std::ranges::find(v, x) != v.end(); }

// Remember the better of two failures: external dependencies outrank plain unknowns.
void keep(Route& best, Route r) {
    if (r) return;
    if (best.reason.empty() || (best.fail == OutcomeKind::unknown && r.fail != OutcomeKind::unknown)) best = std::move(r);
}

class Planner {
public:
    Planner() : cat_(embedded_catalog()) {}

    Route pdf(int n, int m, const SizeSet& k, int depth) {
        if (depth > kMaxDepth) return Route::no(OutcomeKind::unknown, "plan depth limit reached");
        const auto v = necessary_conditions(n, m, k);
        if (v.infeasible()) return Route::no(OutcomeKind::infeasible, v.tag + ": " + v.reason);
        if (v.status == Feasibility::unknown) return Route::no(OutcomeKind::unknown, v.tag + ": " + v.reason);
        if (n == 1 && m == 1) {
            StepParams p;
            p.n = 1;
            p.m = 1;
            p.sizes = k;
            return Route::ok(make_step(StepOp::empty, p, "trivial"));
        }
        if (m == 1) return pdf_1d(n, k);
        if (n == 1) {
            auto r = pdf_1d(m, k);
            if (!r) return r;
            return Route::ok(wrap(StepOp::transpose, 1, m, k, "transpose symmetry", std::move(*r.step)));
        }
        if (k == SizeSet{3, 4}) return theorem16(n, m, k, depth);
        return theorem17(n, m, k, depth);
    }

private:
    const Catalog& cat_;

    int index_of(const CatalogEntry* e) const { return static_cast<int>(e - cat_.entries().data()); }

    PlanStep catalog_step(const CatalogEntry* e) const {
        StepParams p;
        p.entry = index_of(e);
        p.source = e->params.source;
        if (std::holds_alternative<DiffFamily>(e->payload)) {
            const auto& f = e->family();
            if (f.n_set.is_interval()) p.n = static_cast<int>(f.n_set.size());
            if (f.m_set.is_interval()) p.m = static_cast<int>(f.m_set.size());
            p.sizes = f.actual_sizes();
            p.leave = e->params.leave;
        } else if (e->kind == Kind::spgdd) {
            p.k = static_cast<int>(e->spgdd().groups());
            p.m = e->spgdd().m();
        }
        return make_step(StepOp::catalog, std::move(p), e->params.source);
    }

    const CatalogEntry* find_pdf(int a, int b, const SizeSet& k) const {
        return cat_.find([&](const CatalogEntry& e) {
            if (e.kind != Kind::gen_pdf) return false;
            const auto& f = e.family();
            return f.n_set == axis(a) && f.m_set == axis(b) && subset(f.actual_sizes(), k);
        });
    }

    const CatalogEntry* find_pdp(int a, const LeaveSpec& leave, const SizeSet& k, std::string_view source = {}) const {
        return cat_.find([&](const CatalogEntry& e) {
            if (e.kind != Kind::gen_pdp || !e.params.leave) return false;
            if (!source.empty() && e.params.source.rfind(source, 0) != 0) return false;
            const auto& f = e.family();
            return f.n_set == axis(a) && f.is_one_dimensional() && *e.params.leave == leave && subset(f.actual_sizes(), k);
        });
    }

    // Catalog PDF in either orientation, delivered over [a] x [b].
    std::optional<PlanStep> catalog_pdf(int a, int b, const SizeSet& k) const {
        if (const auto* e = find_pdf(a, b, k)) return catalog_step(e);
        if (const auto* e = find_pdf(b, a, k)) {
            return wrap(StepOp::transpose, a, b, k, "transpose symmetry", catalog_step(e));
        }
        return std::nullopt;
    }

    Route pdf_1d(int n, const SizeSet& k) {
        if (auto s = catalog_pdf(n, 1, k)) return Route::ok(std::move(*s));
        StepParams p;
        p.n = n;
        p.m = 1;
        p.sizes = k;
        const bool small_k = subset(k, {3, 4});
        return Route::ok(make_step(StepOp::search_pdp, p, small_k ? "Lemma 4.1" : "Lemma 5.2"));
    }

    PlanStep pdm(int rows, int v) const {
        StepParams p;
        p.k = rows;
        p.m = v;
        auto search = make_step(StepOp::search_pdm, p, "Lemma 2.4");
        return make_step(StepOp::pdm_spgdd, p, "Lemma 2.4", {std::move(search)});
    }

    // SPGDD of type v^groups from a one-dimensional v-PDF and MGDDs of type g^groups.
    Route spgdd_via_mgdd(int v, int groups, const SizeSet& pdf_sizes, const SizeSet& mgdd_sizes, const std::string& cite) {
        auto base = pdf_1d(v, pdf_sizes);
        if (!base) return base;
        std::vector<PlanStep> inputs{std::move(*base.step)};
        for (int g : pdf_sizes) {
            StepParams p;
            p.k = g;
            p.h = groups;
            for (int s : mgdd_sizes) {
                if (s <= std::min(g, groups)) p.sizes.insert(s);
            }
            inputs.push_back(with_role(make_step(StepOp::search_mgdd, p, "Lemma 2.5"), g));
        }
        StepParams sp;
        sp.k = groups;
        sp.m = v;
        auto modified = make_step(StepOp::spmgdd, sp, "Construction 3.3", std::move(inputs));
        return Route::ok(make_step(StepOp::augment, sp, cite, {std::move(modified)}));
    }

    enum class SpgddPref { pdm_first, lemma42, lemma53, cor35 };

    Route spgdd(int v, int groups, SpgddPref pref) {
        if (const auto* e = cat_.find([&](const CatalogEntry& c) {
                return c.kind == Kind::spgdd && c.spgdd().m() == v && static_cast<int>(c.spgdd().groups()) == groups;
            })) {
            return Route::ok(catalog_step(e));
        }
        if (v == 1) return Route::ok(pdm(groups, 1));
        if (groups == 3 && pref != SpgddPref::cor35) return Route::ok(pdm(3, v));
        if (groups == 3) return spgdd_via_mgdd(v, 3, {3, 4, 5}, {3, 4, 5}, "Corollary 3.5");
        if (pref == SpgddPref::lemma42) return spgdd_via_mgdd(v, groups, {3, 4}, {3, 4}, "Lemma 4.2");
        if (pref == SpgddPref::cor35) return spgdd_via_mgdd(v, groups, {3, 4, 5}, {3, 4, 5}, "Corollary 3.5");
        if (pref == SpgddPref::pdm_first) {
            if (groups == 4 && v != 9 && v != 11 && v != 59 && v < 200) return Route::ok(pdm(4, v));
            if (groups == 5 && v == 5) return Route::ok(pdm(5, v));
        }
        if (v % 2 == 1 && !in_exceptional_orders(v)) {
            return spgdd_via_mgdd(v, groups, {3, 4, 5}, groups == 4 ? SizeSet{3, 4} : SizeSet{3, 4, 5}, "Lemma 5.3");
        }
        return Route::no(OutcomeKind::unknown,
                         "no SPGDD of type " + std::to_string(v) + "^" + std::to_string(groups) + " at desk scale");
    }

    // 1D family over [a] inflated by SPGDDs of type v^k, one input per block size.
    Route inflate(PlanStep one_dim, const SizeSet& block_sizes, int a, int v, const SizeSet& k, SpgddPref pref) {
        std::vector<PlanStep> inputs{std::move(one_dim)};
        for (int s : block_sizes) {
            auto ing = spgdd(v, s, pref);
            if (!ing) return ing;
            inputs.push_back(with_role(std::move(*ing.step), s));
        }
        StepParams p;
        p.n = a;
        p.m = v;
        p.sizes = k;
        return Route::ok(make_step(StepOp::inflate, p, "Construction 3.2", std::move(inputs)));
    }

    PlanStep compose(PlanStep outer, PlanStep inner, int a, int b, const SizeSet& k, std::string cite) const {
        StepParams p;
        p.n = a;
        p.m = b;
        p.sizes = k;
        return make_step(StepOp::compose, p, std::move(cite), {std::move(outer), std::move(inner)});
    }

    Route lemma43(int a, int b, const SizeSet& k) {
        auto outer = pdf_1d(a, {3, 4});
        auto col = pdf_1d(b, {3, 4});
        if (!outer || !col) return Route::no(OutcomeKind::unknown, "missing one-dimensional PDF");
        auto inflated = inflate(std::move(*outer.step), {3, 4}, a, b, k, SpgddPref::lemma42);
        if (!inflated) return inflated;
        auto inner = wrap(StepOp::transpose, 1, b, {3, 4}, "Construction 3.1", std::move(*col.step));
        return Route::ok(compose(std::move(*inflated.step), std::move(inner), a, b, k, "Lemma 4.3"));
    }

    Route theorem16(int a, int b, const SizeSet& k, int depth) {
        (void)depth;
        if (auto s = catalog_pdf(a, b, {3, 4})) return Route::ok(std::move(*s));
        if (a % 6 == 1 && b % 6 == 1) return lemma43(a, b, k);
        if (static_cast<long>(a) * b <= kSmallSearchCells) {
            StepParams p;
            p.n = a;
            p.m = b;
            p.sizes = {3, 4};
            return Route::ok(make_step(StepOp::search_pdp, p, "desk-scale search"));
        }
        auto r24 = [](int x) { return x % 24 == 17 || x % 24 == 23; };
        if (r24(a) && r24(b)) {
            return Route::no(OutcomeKind::external_dependency,
                             "Lemma 1.5: generalized (" + std::to_string(a) + "x" + std::to_string(b) +
                                 ",3,1)-PDF from Wang et al. [23]");
        }
        return Route::no(OutcomeKind::external_dependency,
                         "Lemma 4.4: generalized (" + std::to_string(a) + "x" + std::to_string(b) +
                             ",3,1)-PDP with leave [h1]^r1 x [h2]^r2 from Wang et al. [23]");
    }

    // Designs a table row names as n x m itself.
    Route direct(int a, int b, const SizeSet& k, int depth) {
        if (auto s = catalog_pdf(a, b, k)) return Route::ok(std::move(*s));
        if ((a == 9 && b == 27) || (a == 27 && b == 9)) return two_part(a, b, 9, 27, "Lemma 5.10", k);
        if (in({15, 17, 21, 27}, a) && b == 19) return two_part(a, b, a, 19, "Lemma 5.11", k);
        if (in({15, 17, 21, 27}, b) && a == 19) return two_part(a, b, b, 19, "Lemma 5.11", k);
        if (static_cast<long>(a) * b % 6 == 1) {
            auto r = theorem16(a, b, {3, 4}, depth + 1);
            if (r) return Route::ok(wrap(StepOp::select, a, b, k, "Theorem 1.6", std::move(*r.step)));
            return r;
        }
        return Route::no(OutcomeKind::unknown, "no direct design for " + std::to_string(a) + "x" + std::to_string(b));
    }

    // One-dimensional PDP over [len] with a non-interval leave, inflated over [g] and
    // filled with the catalog family over [g] x leave.
    Route two_part(int a, int b, int g, int len, const std::string& cite, const SizeSet& k) {
        const auto* pdp = cat_.find([&](const CatalogEntry& e) {
            return e.kind == Kind::gen_pdp && e.params.source == cite && e.family().n_set == axis(len);
        });
        const auto* fill = cat_.find([&](const CatalogEntry& e) {
            return e.kind == Kind::gen_pdf && e.family().n_set == axis(g) && !e.family().m_set.is_interval() &&
                   (e.params.source == cite || e.params.source.rfind("Appendix B", 0) == 0);
        });
        if (!pdp || !fill) return Route::no(OutcomeKind::unknown, "missing catalog data for " + cite);
        auto inflated = inflate(catalog_step(pdp), pdp->family().actual_sizes(), len, g, k, SpgddPref::pdm_first);
        if (!inflated) return inflated;
        auto inner = wrap(StepOp::transpose, 0, g, k, "transpose symmetry", catalog_step(fill));
        auto composed = compose(std::move(*inflated.step), std::move(inner), len, g, k, "Construction 3.1");
        if (a == g) return Route::ok(wrap(StepOp::transpose, a, b, k, cite, std::move(composed)));
        composed.cite = cite;
        return Route::ok(std::move(composed));
    }

    // PDP over [len] with leave [h]^r: catalog first, then a Langford sequence.
    Route pdp_with_leave(int len, int h, int r, const SizeSet& k, SizeSet& block_sizes) {
        const auto leave = LeaveSpec::one_dim(axis(h), r);
        if (const auto* e = find_pdp(len, leave, k)) {
            block_sizes = e->family().actual_sizes();
            return Route::ok(catalog_step(e));
        }
        if (r == 1 && (len - h) % 6 == 0 && h % 2 == 1) {
            const int order = (len - h) / 6;
            const int defect = (h + 1) / 2;
            if (langford_conditions(order, defect)) {
                StepParams p;
                p.n = order;
                p.d = defect;
                auto seq = make_step(StepOp::search_langford, p, "Lemma 5.7");
                StepParams q;
                q.n = len;
                q.m = 1;
                q.sizes = {3};
                q.leave = leave;
                block_sizes = {3};
                return Route::ok(make_step(StepOp::langford_pdp, q, "Construction 3.7", {std::move(seq)}));
            }
        }
        return Route::no(OutcomeKind::unknown,
                         "no (" + std::to_string(len) + ",K,1)-PDP with leave " + leave.to_string());
    }

    // Table route over [a] x [b] where a is the table's n.
    Route table(int t, int a, int b, const SizeSet& k, int depth) {
        const TableRow* row = find_row(t, b);
        if (!row) return Route::no(OutcomeKind::unknown, "no table row for m=" + std::to_string(b));
        if (row->h == 0) {
            auto r = direct(a, b, k, depth);
            if (!r) return r;
            return Route::ok(wrap(StepOp::select, a, b, k, row->label(), std::move(*r.step)));
        }
        SizeSet block_sizes;
        auto pdp = pdp_with_leave(b, row->h, row->r, k, block_sizes);
        if (!pdp) return pdp;
        auto inflated = inflate(std::move(*pdp.step), block_sizes, b, a, k, SpgddPref::pdm_first);
        if (!inflated) return inflated;
        auto small = pdf(a, row->h, k, depth + 1);
        if (!small) return small;
        auto inner = wrap(StepOp::transpose, row->h, a, k, "transpose symmetry", std::move(*small.step));
        auto composed = compose(std::move(*inflated.step), std::move(inner), b, a, k, "Construction 3.1");
        return Route::ok(wrap(StepOp::transpose, a, b, k, row->label(), std::move(composed)));
    }

    Route lemma512(int a, int b, const SizeSet& k, int depth) {
        if ((a == 23 || a == 29) && b == 9) {
            if (auto s = catalog_pdf(a, b, k)) return Route::ok(wrap(StepOp::select, a, b, k, "Lemma 5.12", std::move(*s)));
        }
        int h = in(kLemma512Small, a) ? 5 : 11;
        std::string_view source = "Lemma 5.5";
        SpgddPref pref = SpgddPref::pdm_first;
        if (in(kLemma512Large, a) && (b == 19 || b == 27)) {
            h = 5;
            source = "Appendix C";
        }
        const auto* pdp = cat_.find([&](const CatalogEntry& e) {
            return e.kind == Kind::gen_pdp && e.params.source.rfind(source, 0) == 0 && e.family().n_set == axis(a) &&
                   e.family().is_one_dimensional() && e.params.leave && e.params.leave->h1 == axis(h) &&
                   e.params.leave->h2 == SymmetricSet{};
        });
        if (!pdp) return Route::no(OutcomeKind::unknown, "no one-dimensional PDP for Lemma 5.12 at n=" + std::to_string(a));
        auto inflated = inflate(catalog_step(pdp), pdp->family().actual_sizes(), a, b, k, pref);
        if (!inflated) return inflated;
        auto inner = pdf(h, b, k, depth + 1);
        if (!inner) return inner;
        return Route::ok(compose(std::move(*inflated.step), std::move(*inner.step), a, b, k, "Lemma 5.12"));
    }

    Route lemma54(int a, int b, const SizeSet& k) {
        auto outer = pdf_1d(a, k);
        auto col = pdf_1d(b, k);
        if (!outer || !col) return Route::no(OutcomeKind::unknown, "missing one-dimensional PDF");
        auto inflated = inflate(std::move(*outer.step), k, a, b, k, SpgddPref::lemma53);
        if (!inflated) return inflated;
        auto inner = wrap(StepOp::transpose, 1, b, k, "Construction 3.1", std::move(*col.step));
        return Route::ok(compose(std::move(*inflated.step), std::move(inner), a, b, k, "Lemma 5.4"));
    }

    // Expansion of the second axis: b = base * v with a v-PDF.
    Route corollary35(int a, int b, const SizeSet& k, int depth) {
        Route best;
        for (int v = 7; v <= b / 5; v += 2) {
            if (b % v != 0 || in_exceptional_orders(v)) continue;
            const int base = b / v;
            if (base % 2 == 0) continue;
            auto small = pdf(a, base, k, depth + 1);
            if (!small) {
                keep(best, std::move(small));
                continue;
            }
            auto pv = pdf_1d(v, k);
            std::vector<PlanStep> inputs{std::move(*small.step), std::move(*pv.step)};
            bool ok = true;
            for (int s : k) {
                auto ing = spgdd(v, s, SpgddPref::cor35);
                if (!ing) {
                    keep(best, std::move(ing));
                    ok = false;
                    break;
                }
                inputs.push_back(with_role(std::move(*ing.step), s));
            }
            if (!ok) continue;
            StepParams p;
            p.n = a;
            p.m = b;
            p.sizes = k;
            return Route::ok(make_step(StepOp::expand, p, "Corollary 3.5", std::move(inputs)));
        }
        if (best.reason.empty()) best = Route::no(OutcomeKind::unknown, "no factorization for Corollary 3.5");
        return best;
    }

    Route oriented(int n, int m, const SizeSet& k, const std::function<Route(int, int)>& f) {
        auto r = f(n, m);
        if (r || n == m) return r;
        auto t = f(m, n);
        if (!t) {
            keep(r, std::move(t));
            return r;
        }
        return Route::ok(wrap(StepOp::transpose, n, m, k, "transpose symmetry", std::move(*t.step)));
    }

    Route theorem17(int n, int m, const SizeSet& k, int depth) {
        Route best;
        auto attempt = [&](const std::function<Route(int, int)>& f) -> std::optional<Route> {
            auto r = oriented(n, m, k, f);
            if (r) return r;
            keep(best, std::move(r));
            return std::nullopt;
        };
        if (auto r = attempt([&](int a, int b) -> Route {
                if (!in(kLemma512Small, a) && !in(kLemma512Large, a)) return Route::no(OutcomeKind::unknown, "");
                if (b == 1) return Route::no(OutcomeKind::unknown, "");
                return lemma512(a, b, k, depth);
            })) {
            return std::move(*r);
        }
        // Lemma 5.9: the 5 x m table, or Theorem 1.6 when 5m = 1 (mod 6).
        if (auto r = attempt([&](int a, int b) -> Route {
                if (a != 5) return Route::no(OutcomeKind::unknown, "");
                if (b % 6 == 5) {
                    auto t = theorem16(a, b, {3, 4}, depth + 1);
                    if (!t) return t;
                    return Route::ok(wrap(StepOp::select, a, b, k, "Lemma 5.9", std::move(*t.step)));
                }
                return table(1, a, b, k, depth);
            })) {
            return std::move(*r);
        }
        if (auto r = attempt([&](int a, int b) -> Route {
                if (a != 9 && a != 11) return Route::no(OutcomeKind::unknown, "");
                return table(2, a, b, k, depth);
            })) {
            return std::move(*r);
        }
        if (auto r = attempt([&](int a, int b) -> Route {
                if (!in({15, 17, 21, 27}, a)) return Route::no(OutcomeKind::unknown, "");
                return table(3, a, b, k, depth);
            })) {
            return std::move(*r);
        }
        if (auto s = catalog_pdf(n, m, k)) return Route::ok(std::move(*s));
        if (n % 6 == 1 && m % 6 == 1) return lemma43(n, m, k);
        if (!in_exceptional_orders(n) && !in_exceptional_orders(m)) return lemma54(n, m, k);
        if (auto r = attempt([&](int a, int b) { return corollary35(a, b, k, depth); })) return std::move(*r);
        if (static_cast<long>(n) * m <= kSmallSearchCells) {
            StepParams p;
            p.n = n;
            p.m = m;
            p.sizes = k;
            return Route::ok(make_step(StepOp::search_pdp, p, "desk-scale search"));
        }
        if (best.reason.empty()) best = Route::no(OutcomeKind::unknown, "no construction route at desk scale");
        return best;
    }
};

struct StepFailure {
    OutcomeKind kind;
    std::string reason;
};

// Successful searches are deterministic, so their results are shared across executions.
std::mutex g_cache_mutex;
std::map<std::string, Payload>& search_cache() {
    static std::map<std::string, Payload> cache;
    return cache;
}

class Executor {
public:
    explicit Executor(const SearchBudget& budget) : budget_(budget) {}

    Payload run(const PlanStep& s) {
        const std::string key = format_step(s);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const bool cacheable = s.op == StepOp::search_pdp || s.op == StepOp::search_pdm || s.op == StepOp::search_mgdd ||
                               s.op == StepOp::search_langford;
        if (cacheable) {
            std::scoped_lock lock(g_cache_mutex);
            if (auto it = search_cache().find(key); it != search_cache().end()) return memo_[key] = it->second;
        }
        Payload out = eval(s);
        if (cacheable) {
            std::scoped_lock lock(g_cache_mutex);
            search_cache().emplace(key, out);
        }
        return memo_[key] = std::move(out);
    }

    DiffFamily family(const PlanStep& s) { return std::get<DiffFamily>(run(s)); }

private:
    SearchBudget budget_;
    std::map<std::string, Payload> memo_;

    [[noreturn]] void fail(const PlanStep& s, SearchStatus st) {
        std::string line = format_step(s);
        if (!line.empty() && line.back() == '\n') line.pop_back();
        throw StepFailure{OutcomeKind::budget_exceeded, std::string(status_name(st)) + " at " + line};
    }

    template <class T>
    T found(const PlanStep& s, SearchOutcome<T> r) {
        if (!r.found()) fail(s, r.status);
        return std::move(*r.design);
    }

    std::map<int, const PlanStep*> roles(const PlanStep& s, std::size_t first) {
        std::map<int, const PlanStep*> out;
        for (std::size_t i = first; i < s.inputs.size(); ++i) out[s.inputs[i].role] = &s.inputs[i];
        return out;
    }

    IngredientMap ingredients(const PlanStep& s, std::size_t first, const DiffFamily& f) {
        IngredientMap out;
        auto by_role = roles(s, first);
        for (int k : f.actual_sizes()) {
            auto it = by_role.find(k);
            if (it == by_role.end()) throw InvalidInput("plan has no ingredient for block size " + std::to_string(k));
            out.emplace(k, std::get<SPGDDInstance>(run(*it->second)));
        }
        return out;
    }

    MGDDInstance mgdd(const PlanStep& s) {
        const auto& p = s.params;
        const int single = std::min(p.k, p.h);
        if (p.sizes.size() > 1 && p.sizes.contains(single)) {
            SearchBudget quick = budget_;
            quick.nodes = std::min<std::uint64_t>(budget_.nodes, 1'000'000);
            auto r = search_mgdd({single}, p.k, p.h, quick);
            if (r.found()) return std::move(*r.design);
        }
        return found(s, search_mgdd(p.sizes, p.k, p.h, budget_));
    }

    Payload eval(const PlanStep& s) {
        const auto& p = s.params;
        switch (s.op) {
            case StepOp::select: return run(s.inputs.at(0));
            case StepOp::empty: return DiffFamily::make({}, SymmetricSet{}, SymmetricSet{}, p.sizes);
            case StepOp::catalog: return embedded_catalog().entries().at(static_cast<std::size_t>(p.entry)).payload;
            case StepOp::search_pdp: {
                const auto leave = p.leave.value_or(LeaveSpec::trivial());
                return found(s, search_gen_pdp(sym_interval(p.n), sym_interval(p.m), p.sizes, leave, budget_));
            }
            case StepOp::search_pdm: return found(s, search_pdm(p.k, p.m, budget_));
            case StepOp::search_mgdd: return mgdd(s);
            case StepOp::search_langford: return found(s, search_langford(p.n, p.d, budget_));
            case StepOp::langford_pdp: return langford_to_pdp(std::get<LangfordSeq>(run(s.inputs.at(0))));
            case StepOp::pdm_spgdd: return pdm_to_spgdd(std::get<PDMatrix>(run(s.inputs.at(0))));
            case StepOp::spmgdd: {
                const auto base = family(s.inputs.at(0));
                auto by_role = roles(s, 1);
                MgddMap mg;
                for (int k : base.actual_sizes()) {
                    auto it = by_role.find(k);
                    if (it == by_role.end()) throw InvalidInput("plan has no MGDD for block size " + std::to_string(k));
                    mg.emplace(k, std::get<MGDDInstance>(run(*it->second)));
                }
                return spmgdd_from_pdf(base, mg);
            }
            case StepOp::augment: return spgdd_from_spmgdd(std::get<SPGDDInstance>(run(s.inputs.at(0))));
            case StepOp::inflate: {
                const auto base = family(s.inputs.at(0));
                auto out = inflate_by_spgdd(base, ingredients(s, 1, base));
                out.sizes = p.sizes;
                return out;
            }
            case StepOp::compose: {
                auto out = compose_fill(family(s.inputs.at(0)), family(s.inputs.at(1)));
                out.sizes = p.sizes;
                return out;
            }
            case StepOp::transpose: return transpose(family(s.inputs.at(0)));
            case StepOp::expand: {
                const auto base = family(s.inputs.at(0));
                const auto pv = family(s.inputs.at(1));
                auto out = expand_second(base, ingredients(s, 2, base), pv);
                out.sizes = p.sizes;
                return out;
            }
        }
        throw std::logic_error("unknown plan step");
    }
};

}  // namespace

PlanOutcome plan(int n, int m, const SizeSet& sizes) {
    PlanOutcome out;
    if (n < 1 || m < 1) {
        out.kind = OutcomeKind::infeasible;
        out.reason = "parity: orders must be positive";
        return out;
    }
    Planner planner;
    auto r = planner.pdf(n, m, sizes, 0);
    if (!r) {
        out.kind = r.fail;
        out.reason = r.reason;
        return out;
    }
    out.kind = OutcomeKind::planned;
    out.plan = Plan{n, m, sizes, std::move(*r.step)};
    return out;
}

PlanOutcome execute(const Plan& p, const SearchBudget& budget) {
    PlanOutcome out;
    out.plan = p;
    Executor ex(budget);
    try {
        auto f = ex.family(p.root);
        if (!subset(f.actual_sizes(), p.sizes)) throw std::logic_error("plan produced block sizes outside K");
        f.sizes = p.sizes;
        f.canonicalize();
        if (f.n_set != sym_interval(p.n) || f.m_set != sym_interval(p.m) || !verify_gen_pdf(f)) {
            throw std::logic_error("plan produced a design that fails verification: " + verify_gen_pdp(f).describe());
        }
        out.kind = OutcomeKind::built;
        out.design = std::move(f);
    } catch (const StepFailure& e) {
        out.kind = e.kind;
        out.reason = e.reason;
    }
    return out;
}

PlanOutcome execute(const PlanOutcome& planned, const SearchBudget& budget) {
    if (planned.kind != OutcomeKind::planned || !planned.plan) return planned;
    return execute(*planned.plan, budget);
}

PlanOutcome synth(int n, int m, const SizeSet& sizes, const SearchBudget& budget) {
    return execute(plan(n, m, sizes), budget);
}

}  // namespace gpdf
