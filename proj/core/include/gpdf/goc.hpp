#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpdf/core.hpp"

namespace gpdf {

// Codewords live on [0,n-1] x [0,m-1]; x indexes rows and y indexes columns.
struct GocCodebook {
    int n = 0;
    int m = 0;
    std::vector<Block> codewords;
    int lambda_a = 1;
    int lambda_c = 1;
};

struct GocReport {
    bool ok = true;
    std::string violation;  // empty when ok
    std::optional<Point> shift;
    int first = -1;   // codeword index
    int second = -1;  // second codeword for cross-correlation violations
};

class NotPerfect : public InvalidInput {
public:
    explicit NotPerfect(const GocReport& r);
    const GocReport& report() const { return report_; }

private:
    GocReport report_;
};

GocCodebook pdf_to_goc(const DiffFamily& f);
DiffFamily goc_to_pdf(const GocCodebook& c);

// Direct aperiodic correlation scan over all shifts.
GocReport verify_goc(const GocCodebook& c);

bool weight_census_ok(const GocCodebook& c);

enum class GocExistence { exists, impossible, possible_exception };

// Existence of perfect variable-weight GOCs for K = {3,4} or {3,4,5}.
GocExistence goc_existence(int n, int m, const SizeSet& sizes);

enum class ExportFormat { grid, list };

std::string export_goc(const GocCodebook& c, ExportFormat format);

}  // namespace gpdf
