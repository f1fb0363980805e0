#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nckk/model.hpp"

namespace nckk::output {

enum class Format { csv, json_lines };

using Cell = std::variant<long, double, std::string>;

/// Deterministic tabular writer: a `# key = value` comment header with
/// the full resolved parameter set, then rows in csv or json-lines form.
/// Doubles print as %.17g so identical invocations are byte-identical
/// and values round-trip exactly.
class TableWriter {
  public:
    TableWriter(std::ostream& os, Format format, std::vector<std::string> columns);

    void comment(const std::string& line);
    void params_header(const PhysicalParams& params,
                       const std::vector<std::pair<std::string, std::string>>& extra = {});
    void row(const std::vector<Cell>& cells);

    static std::string format_double(double x);

  private:
    std::ostream& os_;
    Format format_;
    std::vector<std::string> columns_;
    bool header_written_ = false;

    void maybe_write_column_header();
};

}  // namespace nckk::output
