#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace stokes::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

Format parse_format(const std::string& text);

Json to_json(std::complex<double> z);
Json to_json(const Eigen::MatrixXcd& M);
Json to_json(const std::vector<std::complex<double>>& v);

/// Records of one command run. Every record carries "check" (the identity
/// it tested) and "pass".
class Report {
public:
    Report(std::string command, Json params);

    void add(Json record);
    /// Top-level payload that is not a check (a trajectory, a matrix).
    void attach(const std::string& key, Json value);

    bool all_pass() const;
    int status() const { return all_pass() ? 0 : 1; }

    void emit(std::ostream& os, Format format) const;

private:
    std::string command_;
    Json params_;
    std::vector<Json> records_;
    Json extra_ = Json::object();

    void emit_json(std::ostream& os) const;
    void emit_csv(std::ostream& os) const;
    void emit_text(std::ostream& os) const;
};

} // namespace stokes::cli
