#include "nckk/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nckk::output {

TableWriter::TableWriter(std::ostream& os, Format format, std::vector<std::string> columns)
    : os_(os), format_(format), columns_(std::move(columns)) {}

std::string TableWriter::format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void TableWriter::comment(const std::string& line) {
    if (header_written_) throw std::logic_error("TableWriter: comments must precede data rows");
    os_ << "# " << line << "\n";
}

void TableWriter::params_header(const PhysicalParams& params,
                                const std::vector<std::pair<std::string, std::string>>& extra) {
    comment("hbar = " + format_double(params.hbar));
    comment("mass = " + format_double(params.mass));
    comment("c = " + format_double(params.c));
    comment("qe2 = " + format_double(params.qe2));
    comment("V0 = " + format_double(params.V0));
    comment("eta = " + format_double(params.eta));
    comment("theta = " + format_double(params.theta));
    comment("R = " + format_double(params.R));
    comment("wp = " + format_double(params.wp));
    comment("D = " + std::to_string(params.D));
    for (const auto& [k, v] : extra) comment(k + " = " + v);
}

void TableWriter::maybe_write_column_header() {
    if (header_written_) return;
    header_written_ = true;
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os_ << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    }
}

void TableWriter::row(const std::vector<Cell>& cells) {
    if (cells.size() != columns_.size())
        throw std::logic_error("TableWriter: row width does not match column count");
    maybe_write_column_header();
    auto cell_text = [](const Cell& c, bool quote_strings) -> std::string {
        if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
        if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
        const std::string& s = std::get<std::string>(c);
        return quote_strings ? "\"" + s + "\"" : s;
    };
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os_ << cell_text(cells[i], false) << (i + 1 < cells.size() ? "," : "\n");
    } else {
        os_ << "{";
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os_ << "\"" << columns_[i] << "\":";
            // NaN is not valid JSON; emit it as a string token.
            if (std::holds_alternative<double>(cells[i]) && !std::isfinite(std::get<double>(cells[i])))
                os_ << "\"" << format_double(std::get<double>(cells[i])) << "\"";
            else
                os_ << cell_text(cells[i], true);
            if (i + 1 < cells.size()) os_ << ",";
        }
        os_ << "}\n";
    }
}

}  // namespace nckk::output
