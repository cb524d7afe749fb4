#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpdf/core.hpp"
#include "gpdf/verify.hpp"

namespace gpdf {

enum class Kind { gen_pdf, gen_pdp, spgdd, spmgdd, pdm, mgdd, langford };

std::string_view kind_name(Kind k);
std::optional<Kind> parse_kind(std::string_view s);

struct CatalogParams {
    std::optional<SymmetricSet> n;
    std::optional<SymmetricSet> m;
    std::optional<SizeSet> sizes;
    std::optional<LeaveSpec> leave;
    std::optional<int> type_window;   // type v^g: v
    std::optional<int> type_groups;   // type v^g: g
    std::optional<int> rows;          // PDM k
    std::optional<int> defect;        // Langford d
    std::optional<int> order;         // Langford n
    std::string source;
    std::string erratum;
};

using Payload = std::variant<DiffFamily, SPGDDInstance, PDMatrix, MGDDInstance, LangfordSeq>;

struct CatalogEntry {
    Kind kind = Kind::gen_pdf;
    CatalogParams params;
    Payload payload;
    int line = 0;

    const DiffFamily& family() const { return std::get<DiffFamily>(payload); }
    const SPGDDInstance& spgdd() const { return std::get<SPGDDInstance>(payload); }
    const PDMatrix& pdm() const { return std::get<PDMatrix>(payload); }
    const MGDDInstance& mgdd() const { return std::get<MGDDInstance>(payload); }
    const LangfordSeq& langford() const { return std::get<LangfordSeq>(payload); }

    std::string label() const;
};

class CatalogParseError : public std::runtime_error {
public:
    CatalogParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

class CatalogVerifyError : public std::runtime_error {
public:
    CatalogVerifyError(const CatalogEntry& e, const std::string& failure);
    int line() const { return line_; }

private:
    int line_;
};

SymmetricSet parse_symmetric(std::string_view tok);
LeaveSpec parse_leave(std::string_view tok);

// Parses without verification; throws CatalogParseError.
std::vector<CatalogEntry> parse_catalog(std::string_view text);

// Empty string when the entry verifies, otherwise the failing invariant.
std::string check_entry(const CatalogEntry& e);

// Parse and verify; fails atomically with CatalogParseError or CatalogVerifyError.
std::vector<CatalogEntry> load_text(std::string_view text);
std::vector<CatalogEntry> load(const std::string& path);

std::string format_entry(const CatalogEntry& e);

CatalogEntry make_family_entry(Kind kind, DiffFamily f, std::optional<LeaveSpec> leave, std::string source);
CatalogEntry make_spgdd_entry(SPGDDInstance inst, SpgddKind kind, std::string source);
CatalogEntry make_pdm_entry(PDMatrix p, std::string source);
CatalogEntry make_mgdd_entry(MGDDInstance inst, SizeSet sizes, std::string source);
CatalogEntry make_langford_entry(LangfordSeq seq, std::string source);

struct CatalogQuery {
    Kind kind = Kind::gen_pdf;
    std::optional<SymmetricSet> n;
    std::optional<SymmetricSet> m;
    std::optional<SizeSet> sizes;
    std::optional<LeaveSpec> leave;
    std::optional<int> type_window;
    std::optional<int> type_groups;
    std::optional<int> rows;
    std::optional<int> defect;
    std::optional<int> order;
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {}

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    void add(CatalogEntry e) { entries_.push_back(std::move(e)); }

    std::optional<CatalogEntry> lookup(const CatalogQuery& q) const;
    const CatalogEntry* find(const std::function<bool(const CatalogEntry&)>& pred) const;

private:
    std::vector<CatalogEntry> entries_;
};

struct EmbeddedFile {
    std::string_view name;
    std::string_view text;
};

std::span<const EmbeddedFile> embedded_files();
std::optional<std::string_view> embedded_text(std::string_view name);

// All embedded files, loaded and verified once.
const Catalog& embedded_catalog();

// Example 1.1 over N = {0,±a,±b,±(a+b)}, M = {0,±x,±y,±(x+y)}.
DiffFamily instantiate_symbolic(int a, int b, int x, int y);

}  // namespace gpdf
