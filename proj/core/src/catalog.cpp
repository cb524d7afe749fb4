#include "gpdf/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace gpdf {

namespace {

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::gen_pdf, "gen_pdf"}, {Kind::gen_pdp, "gen_pdp"}, {Kind::spgdd, "spgdd"}, {Kind::spmgdd, "spmgdd"},
    {Kind::pdm, "pdm"},         {Kind::mgdd, "mgdd"},       {Kind::langford, "langford"},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<int> to_int(std::string_view s) {
    s = trim(s);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

int require_int(std::string_view s, int line, const char* what) {
    auto v = to_int(s);
    if (!v) throw CatalogParseError(line, std::string("expected integer for ") + what + ", got '" + std::string(s) + "'");
    return *v;
}

std::vector<std::string> split_fields(std::string_view line, int lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
            continue;
        }
        if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        cur += c;
    }
    if (quoted) throw CatalogParseError(lineno, "unterminated quote");
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::vector<int>> parse_tuples(std::string_view body, int lineno) {
    std::vector<std::vector<int>> out;
    std::size_t i = 0;
    while (i < body.size()) {
        if (std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
            continue;
        }
        if (body[i] != '(') throw CatalogParseError(lineno, "expected '(' in tuple list");
        auto close = body.find(')', i);
        if (close == std::string_view::npos) throw CatalogParseError(lineno, "missing ')'");
        std::vector<int> tup;
        std::string_view inner = body.substr(i + 1, close - i - 1);
        std::size_t start = 0;
        while (true) {
            auto comma = inner.find(',', start);
            tup.push_back(require_int(inner.substr(start, comma - start), lineno, "coordinate"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        out.push_back(std::move(tup));
        i = close + 1;
    }
    return out;
}

std::pair<int, int> parse_type(std::string_view v, int line) {
    auto caret = v.find('^');
    if (caret == std::string_view::npos) throw CatalogParseError(line, "type must look like v^g");
    return {require_int(v.substr(0, caret), line, "type"), require_int(v.substr(caret + 1), line, "type")};
}

struct RawEntry {
    Kind kind;
    int line;
    std::map<std::string, std::string> kv;
    std::vector<std::vector<std::vector<int>>> blocks;
    std::vector<std::vector<int>> matrix;
    std::vector<std::pair<int, int>> pairs;
};

int interval_size(const std::optional<SymmetricSet>& s, int line, const char* key) {
    if (!s || !s->is_interval()) throw CatalogParseError(line, std::string("key ") + key + " must be an odd integer");
    return static_cast<int>(s->size());
}

CatalogEntry build(RawEntry raw) {
    CatalogEntry e;
    e.kind = raw.kind;
    e.line = raw.line;
    auto& p = e.params;
    const int line = raw.line;
    try {
        for (const auto& [key, val] : raw.kv) {
            if (key == "n" && raw.kind != Kind::langford) p.n = parse_symmetric(val);
            else if (key == "n") p.order = require_int(val, line, "n");
            else if (key == "m") p.m = parse_symmetric(val);
            else if (key == "K") p.sizes = parse_sizes(val);
            else if (key == "leave") p.leave = parse_leave(val);
            else if (key == "type") std::tie(p.type_window, p.type_groups) = parse_type(val, line);
            else if (key == "k") p.rows = require_int(val, line, "k");
            else if (key == "d") p.defect = require_int(val, line, "d");
            else if (key == "groups") p.type_groups = require_int(val, line, "groups");
            else if (key == "holes") p.type_window = require_int(val, line, "holes");
            else if (key == "source") p.source = val;
            else if (key == "erratum") p.erratum = val;
            else throw CatalogParseError(line, "unknown key '" + key + "'");
        }
    } catch (const InvalidParameter& ex) {
        throw CatalogParseError(line, ex.what());
    }
    auto to_blocks = [&](bool one_dim_ok) {
        std::vector<Block> blocks;
        for (const auto& b : raw.blocks) {
            std::vector<Point> pts;
            for (const auto& t : b) {
                if (t.size() == 1 && one_dim_ok) pts.push_back({t[0], 0});
                else if (t.size() == 2) pts.push_back({t[0], t[1]});
                else throw CatalogParseError(line, "bad point arity");
            }
            try {
                blocks.emplace_back(std::move(pts));
            } catch (const InvalidInput& ex) {
                throw CatalogParseError(line, ex.what());
            }
        }
        return blocks;
    };
    switch (raw.kind) {
        case Kind::gen_pdf:
        case Kind::gen_pdp: {
            if (!p.n) throw CatalogParseError(line, "missing key n");
            if (!p.sizes) throw CatalogParseError(line, "missing key K");
            if (!p.m) p.m = SymmetricSet{};
            if (raw.kind == Kind::gen_pdf && !p.leave) p.leave = LeaveSpec::trivial();
            e.payload = DiffFamily::make(to_blocks(true), *p.n, *p.m, *p.sizes);
            break;
        }
        case Kind::spgdd:
        case Kind::spmgdd: {
            if (!p.type_window || !p.type_groups) throw CatalogParseError(line, "missing key type");
            if (*p.type_window < 1 || *p.type_window % 2 == 0) throw CatalogParseError(line, "window must be odd");
            e.payload = make_spgdd(*p.type_groups, *p.type_window, to_blocks(false));
            break;
        }
        case Kind::pdm: {
            if (!p.rows) throw CatalogParseError(line, "missing key k");
            PDMatrix mat{*p.rows, interval_size(p.m, line, "m"), raw.matrix};
            if (static_cast<int>(mat.rows.size()) != mat.k) throw CatalogParseError(line, "matrix row count differs from k");
            e.payload = std::move(mat);
            break;
        }
        case Kind::mgdd: {
            if (!p.type_window || !p.type_groups) throw CatalogParseError(line, "missing keys groups/holes");
            e.payload = MGDDInstance{*p.type_groups, *p.type_window, to_blocks(false)};
            break;
        }
        case Kind::langford: {
            if (!p.order || !p.defect) throw CatalogParseError(line, "missing keys n/d");
            e.payload = LangfordSeq{*p.order, *p.defect, raw.pairs};
            break;
        }
    }
    return e;
}

std::string set_value(const SymmetricSet& s) {
    if (s.is_interval()) return std::to_string(s.size());
    return s.to_string();
}

std::string points_line(const Block& b, bool one_dim) {
    std::string s = "block";
    for (const auto& pt : b.points()) {
        s += one_dim ? " (" + std::to_string(pt.x) + ")" : " " + to_string(pt);
    }
    return s;
}

}  // namespace

std::string_view kind_name(Kind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

std::optional<Kind> parse_kind(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) return kind;
    }
    return std::nullopt;
}

std::string CatalogEntry::label() const {
    std::string s = std::string(kind_name(kind)) + " \"" + params.source + "\"";
    if (!params.erratum.empty()) s += " [erratum]";
    return s;
}

CatalogParseError::CatalogParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

CatalogVerifyError::CatalogVerifyError(const CatalogEntry& e, const std::string& failure)
    : std::runtime_error("entry at line " + std::to_string(e.line) + " (" + e.label() + ") fails verification: " + failure),
      line_(e.line) {}

SymmetricSet parse_symmetric(std::string_view tok) {
    tok = trim(tok);
    if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') tok = tok.substr(1, tok.size() - 2);
    if (tok.size() >= 2 && tok.front() == '{' && tok.back() == '}') {
        std::vector<int> v;
        std::string_view inner = tok.substr(1, tok.size() - 2);
        std::size_t start = 0;
        while (true) {
            auto comma = inner.find(',', start);
            auto x = to_int(inner.substr(start, comma - start));
            if (!x) throw InvalidParameter("bad set element in '" + std::string(tok) + "'");
            v.push_back(*x);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return SymmetricSet::from_elements(std::move(v));
    }
    auto n = to_int(tok);
    if (!n) throw InvalidParameter("bad symmetric set '" + std::string(tok) + "'");
    return sym_interval(*n);
}

LeaveSpec parse_leave(std::string_view tok) {
    tok = trim(tok);
    std::vector<std::string_view> factors;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < tok.size(); ++i) {
        if (tok[i] == '{' || tok[i] == '[') ++depth;
        else if (tok[i] == '}' || tok[i] == ']') --depth;
        else if (tok[i] == 'x' && depth == 0) {
            factors.push_back(tok.substr(start, i - start));
            start = i + 1;
        }
    }
    factors.push_back(tok.substr(start));
    if (factors.size() > 2) throw InvalidParameter("leave has more than two factors: '" + std::string(tok) + "'");
    auto factor = [](std::string_view f) -> std::pair<SymmetricSet, int> {
        auto caret = f.rfind('^');
        int r = 1;
        if (caret != std::string_view::npos && f.find_first_of("]}") < caret) {
            auto v = to_int(f.substr(caret + 1));
            if (!v || *v < 1) throw InvalidParameter("bad leave scale in '" + std::string(f) + "'");
            r = *v;
            f = f.substr(0, caret);
        }
        return {parse_symmetric(f), r};
    };
    LeaveSpec l;
    std::tie(l.h1, l.r1) = factor(factors[0]);
    if (factors.size() == 2) std::tie(l.h2, l.r2) = factor(factors[1]);
    return l;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
    std::vector<CatalogEntry> out;
    std::optional<RawEntry> cur;
    int pending_matrix_rows = 0;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw_line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        auto line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;

        if (pending_matrix_rows > 0) {
            std::vector<int> row;
            std::istringstream ss{std::string(line)};
            std::string tok;
            while (ss >> tok) row.push_back(require_int(tok, lineno, "matrix entry"));
            cur->matrix.push_back(std::move(row));
            --pending_matrix_rows;
            continue;
        }

        auto space = line.find(' ');
        auto head = line.substr(0, space);
        auto rest = space == std::string_view::npos ? std::string_view{} : line.substr(space + 1);
        if (head == "entry") {
            if (cur) throw CatalogParseError(lineno, "entry started before previous 'end'");
            auto fields = split_fields(rest, lineno);
            if (fields.empty()) throw CatalogParseError(lineno, "entry without kind");
            auto kind = parse_kind(fields[0]);
            if (!kind) throw CatalogParseError(lineno, "unknown kind '" + fields[0] + "'");
            cur = RawEntry{*kind, lineno, {}, {}, {}, {}};
            for (std::size_t i = 1; i < fields.size(); ++i) {
                auto eq = fields[i].find('=');
                if (eq == std::string::npos) throw CatalogParseError(lineno, "expected key=value, got '" + fields[i] + "'");
                cur->kv[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
            }
        } else if (!cur) {
            throw CatalogParseError(lineno, "'" + std::string(head) + "' outside an entry");
        } else if (head == "block") {
            cur->blocks.push_back(parse_tuples(rest, lineno));
        } else if (head == "pairs") {
            for (auto& t : parse_tuples(rest, lineno)) {
                if (t.size() != 2) throw CatalogParseError(lineno, "pairs need two coordinates");
                cur->pairs.emplace_back(t[0], t[1]);
            }
        } else if (head == "matrix") {
            auto it = cur->kv.find("k");
            if (it == cur->kv.end()) throw CatalogParseError(lineno, "matrix needs key k");
            pending_matrix_rows = require_int(it->second, lineno, "k");
        } else if (head == "end") {
            out.push_back(build(std::move(*cur)));
            cur.reset();
        } else {
            throw CatalogParseError(lineno, "unknown directive '" + std::string(head) + "'");
        }
    }
    if (cur || pending_matrix_rows > 0) throw CatalogParseError(lineno, "unterminated entry");
    return out;
}

std::string check_entry(const CatalogEntry& e) {
    switch (e.kind) {
        case Kind::gen_pdf:
        case Kind::gen_pdp: {
            auto r = verify_gen_pdp(e.family());
            if (!r.ok) return r.describe();
            if (e.params.leave && !r.leave_equals(*e.params.leave)) {
                return "leave differs from declared " + e.params.leave->to_string() + " (computed " +
                       std::to_string(r.computed_leave.size()) + " elements)";
            }
            return {};
        }
        case Kind::spgdd:
            return verify_spgdd(e.spgdd(), SpgddKind::plain) ? "" : "cross-group differences do not tile the window";
        case Kind::spmgdd:
            return verify_spgdd(e.spgdd(), SpgddKind::modified) ? "" : "cross-group differences do not tile the window minus 0";
        case Kind::pdm:
            return verify_pdm(e.pdm()) ? "" : "row differences do not tile the window";
        case Kind::mgdd:
            return verify_mgdd(e.mgdd()) ? "" : "cross pairs not covered exactly once";
        case Kind::langford:
            return verify_langford(e.langford()) ? "" : "pairs do not form a Langford sequence";
    }
    return "unknown kind";
}

std::vector<CatalogEntry> load_text(std::string_view text) {
    auto entries = parse_catalog(text);
    for (const auto& e : entries) {
        auto failure = check_entry(e);
        if (!failure.empty()) throw CatalogVerifyError(e, failure);
    }
    return entries;
}

std::vector<CatalogEntry> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogParseError(0, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_text(ss.str());
}

std::string format_entry(const CatalogEntry& e) {
    const auto& p = e.params;
    std::string s = "entry " + std::string(kind_name(e.kind));
    switch (e.kind) {
        case Kind::gen_pdf:
        case Kind::gen_pdp:
            s += " n=" + set_value(*p.n) + " m=" + set_value(*p.m) + " K=" + format_sizes(*p.sizes);
            if (e.kind == Kind::gen_pdp && p.leave) s += " leave=" + p.leave->to_string();
            break;
        case Kind::spgdd:
        case Kind::spmgdd:
            s += " type=" + std::to_string(*p.type_window) + "^" + std::to_string(*p.type_groups);
            if (p.sizes) s += " K=" + format_sizes(*p.sizes);
            break;
        case Kind::pdm:
            s += " k=" + std::to_string(*p.rows) + " m=" + set_value(*p.m);
            break;
        case Kind::mgdd:
            s += " groups=" + std::to_string(*p.type_groups) + " holes=" + std::to_string(*p.type_window);
            if (p.sizes) s += " K=" + format_sizes(*p.sizes);
            break;
        case Kind::langford:
            s += " n=" + std::to_string(*p.order) + " d=" + std::to_string(*p.defect);
            break;
    }
    s += " source=\"" + p.source + "\"";
    if (!p.erratum.empty()) s += " erratum=\"" + p.erratum + "\"";
    s += "\n";
    switch (e.kind) {
        case Kind::gen_pdf:
        case Kind::gen_pdp: {
            const bool one_dim = e.family().is_one_dimensional();
            for (const auto& b : e.family().blocks) s += points_line(b, one_dim) + "\n";
            break;
        }
        case Kind::spgdd:
        case Kind::spmgdd:
            for (const auto& b : e.spgdd().base_blocks) s += points_line(b, false) + "\n";
            break;
        case Kind::mgdd:
            for (const auto& b : e.mgdd().blocks) s += points_line(b, false) + "\n";
            break;
        case Kind::pdm:
            s += "matrix\n";
            for (const auto& row : e.pdm().rows) {
                std::string r;
                for (int v : row) r += (r.empty() ? "" : " ") + std::to_string(v);
                s += r + "\n";
            }
            break;
        case Kind::langford: {
            s += "pairs";
            for (auto [a, b] : e.langford().pairs) s += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
            s += "\n";
            break;
        }
    }
    return s + "end\n";
}

CatalogEntry make_family_entry(Kind kind, DiffFamily f, std::optional<LeaveSpec> leave, std::string source) {
    CatalogEntry e;
    e.kind = kind;
    e.params.n = f.n_set;
    e.params.m = f.m_set;
    e.params.sizes = f.sizes;
    e.params.leave = kind == Kind::gen_pdf ? LeaveSpec::trivial() : std::move(leave);
    e.params.source = std::move(source);
    e.payload = std::move(f);
    return e;
}

CatalogEntry make_spgdd_entry(SPGDDInstance inst, SpgddKind kind, std::string source) {
    CatalogEntry e;
    e.kind = kind == SpgddKind::plain ? Kind::spgdd : Kind::spmgdd;
    e.params.type_window = inst.m();
    e.params.type_groups = static_cast<int>(inst.groups());
    e.params.sizes = inst.block_sizes();
    e.params.source = std::move(source);
    e.payload = std::move(inst);
    return e;
}

CatalogEntry make_pdm_entry(PDMatrix p, std::string source) {
    CatalogEntry e;
    e.kind = Kind::pdm;
    e.params.rows = p.k;
    e.params.m = sym_interval(p.m);
    e.params.source = std::move(source);
    e.payload = std::move(p);
    return e;
}

CatalogEntry make_mgdd_entry(MGDDInstance inst, SizeSet sizes, std::string source) {
    CatalogEntry e;
    e.kind = Kind::mgdd;
    e.params.type_groups = inst.h;
    e.params.type_window = inst.k;
    e.params.sizes = std::move(sizes);
    e.params.source = std::move(source);
    e.payload = std::move(inst);
    return e;
}

CatalogEntry make_langford_entry(LangfordSeq seq, std::string source) {
    CatalogEntry e;
    e.kind = Kind::langford;
    e.params.order = seq.n;
    e.params.defect = seq.d;
    e.params.source = std::move(source);
    e.payload = std::move(seq);
    return e;
}

std::optional<CatalogEntry> Catalog::lookup(const CatalogQuery& q) const {
    auto match = [](const auto& want, const auto& have) { return !want || (have && *want == *have); };
    for (const auto& e : entries_) {
        const auto& p = e.params;
        if (e.kind != q.kind) continue;
        if (match(q.n, p.n) && match(q.m, p.m) && match(q.sizes, p.sizes) && match(q.leave, p.leave) &&
            match(q.type_window, p.type_window) && match(q.type_groups, p.type_groups) && match(q.rows, p.rows) &&
            match(q.defect, p.defect) && match(q.order, p.order)) {
            return e;
        }
    }
    return std::nullopt;
}

const CatalogEntry* Catalog::find(const std::function<bool(const CatalogEntry&)>& pred) const {
    for (const auto& e : entries_) {
        if (pred(e)) return &e;
    }
    return nullptr;
}

const Catalog& embedded_catalog() {
    static const Catalog cat = [] {
        std::vector<CatalogEntry> all;
        for (const auto& f : embedded_files()) {
            auto entries = load_text(f.text);
            all.insert(all.end(), std::make_move_iterator(entries.begin()), std::make_move_iterator(entries.end()));
        }
        return Catalog(std::move(all));
    }();
    return cat;
}

std::optional<std::string_view> embedded_text(std::string_view name) {
    for (const auto& f : embedded_files()) {
        if (f.name == name) return f.text;
    }
    return std::nullopt;
}

DiffFamily instantiate_symbolic(int a, int b, int x, int y) {
    if (a <= 0 || b <= 0 || x <= 0 || y <= 0) throw InvalidParameter("symbolic parameters must be positive");
    if (a == b) throw InvalidParameter("a and b must differ");
    if (x == y) throw InvalidParameter("x and y must differ");
    const int c = a + b;
    const int z = x + y;
    std::vector<Block> blocks{
        {{0, 0}, {a, 0}, {c, z}}, {{0, x}, {a, z}, {c, 0}}, {{0, z}, {a, 0}, {c, x}}, {{0, z}, {a, y}, {c, 0}},
        {{0, 0}, {a, z}, {c, y}}, {{0, 0}, {0, z}, {a, x}}, {{0, 0}, {0, y}, {b, y}}, {{0, 0}, {0, x}, {c, x}},
    };
    auto f = DiffFamily::make(std::move(blocks), SymmetricSet::from_elements({0, a, -a, b, -b, c, -c}),
                              SymmetricSet::from_elements({0, x, -x, y, -y, z, -z}), SizeSet{3});
    auto r = verify_gen_pdp(f);
    if (!r.ok || r.computed_leave != std::vector<Point>{{0, 0}}) {
        throw InvalidInput("symbolic family fails verification: " +
                           (r.ok ? std::string("leave is not {(0,0)}") : r.describe()));
    }
    return f;
}

}  // namespace gpdf
