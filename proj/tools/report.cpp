#include "report.hpp"

#include <algorithm>
#include <stdexcept>

namespace stokes::cli {

Format parse_format(const std::string& text) {
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    if (text == "text") return Format::Text;
    throw std::invalid_argument("unknown output format: " + text);
}

Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Eigen::MatrixXcd& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const std::vector<std::complex<double>>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(to_json(z));
    return out;
}

Report::Report(std::string command, Json params) : command_(std::move(command)), params_(std::move(params)) {}

void Report::add(Json record) {
    if (!record.contains("check") || !record.contains("pass") || !record["pass"].is_boolean())
        throw std::logic_error("record without check/pass");
    records_.push_back(std::move(record));
}

void Report::attach(const std::string& key, Json value) { extra_[key] = std::move(value); }

bool Report::all_pass() const {
    return std::all_of(records_.begin(), records_.end(), [](const Json& r) { return r["pass"].get<bool>(); });
}

void Report::emit(std::ostream& os, Format format) const {
    switch (format) {
    case Format::Json: emit_json(os); break;
    case Format::Csv: emit_csv(os); break;
    case Format::Text: emit_text(os); break;
    }
}

void Report::emit_json(std::ostream& os) const {
    Json out;
    out["command"] = command_;
    out["params"] = params_;
    out["status"] = all_pass() ? "pass" : "fail";
    out["records"] = records_;
    auto bad = std::find_if(records_.begin(), records_.end(), [](const Json& r) { return !r["pass"].get<bool>(); });
    out["first_counterexample"] = bad == records_.end() ? Json(nullptr) : *bad;
    for (const auto& [k, v] : extra_.items()) out[k] = v;
    os << out.dump(2) << '\n';
}

namespace {

std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

void Report::emit_csv(std::ostream& os) const {
    std::vector<std::string> columns;
    for (const auto& r : records_)
        for (const auto& [k, v] : r.items())
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_escape(columns[c]);
    os << '\n';
    for (const auto& r : records_) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) os << ',';
            if (r.contains(columns[c])) os << csv_escape(cell(r[columns[c]]));
        }
        os << '\n';
    }
}

void Report::emit_text(std::ostream& os) const {
    os << command_ << ' ' << params_.dump() << '\n';
    for (const auto& r : records_) {
        os << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["check"].get<std::string>();
        for (const auto& [k, v] : r.items()) {
            if (k == "check" || k == "pass") continue;
            os << ' ' << k << '=' << cell(v);
        }
        os << '\n';
    }
    os << "status: " << (all_pass() ? "pass" : "fail") << '\n';
}

} // namespace stokes::cli
