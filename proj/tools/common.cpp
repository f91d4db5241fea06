#include "common.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "stokes/leaves.hpp"

namespace stokes::cli {

Json params_json(const std::string& command, const Options& o) {
    Json p;
    p["command"] = command;
    p["family"] = o.family;
    p["n"] = o.n;
    static const std::set<std::string> matrix_only{"flow", "pvi-check", "dual-monodromy", "commutator-report",
                                                   "isospectral"};
    if (o.n == 0 && !matrix_only.count(command) && !(command == "leaf-dim" && o.generic)) {
        try {
            p["n"] = family_of(o).n();
        } catch (const UsageError&) {
        }
    }
    if (!o.Z.empty()) p["Z"] = o.Z;
    if (!o.Y.empty()) p["Y"] = o.Y;
    p["seed"] = o.seed;
    p["tol"] = o.tol;
    p["samples"] = o.samples;
    if (command == "isospectral" && !o.X.empty()) p["X"] = o.X;
    if (command == "dual-monodromy" || command == "commutator-report")
        if (!o.q.empty()) p["q"] = o.q;
    if (command == "commutator-report") p["indices"] = o.indices;
    if (command == "pvi-check") {
        p["t0"] = o.t0;
        p["t1"] = o.t1;
        if (!o.mu.empty()) p["mu"] = o.mu;
    }
    if (command == "flow") {
        p["span"] = o.span;
        p["coordinate"] = o.coordinate;
        p["stride"] = o.stride;
    }
    if (command == "flow" || command == "pvi-check") {
        p["step"] = o.step;
        p["norm"] = o.norm;
    }
    if (command == "leaf-dim") p["generic"] = o.generic;
    return p;
}

surfaces::SurfaceFamily family_of(const Options& o) {
    surfaces::Kind kind;
    try {
        kind = surfaces::parse_kind(o.family);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    int n = o.n;
    if (n == 0 && !o.Z.empty()) n = static_cast<int>(parse_list(o.Z).size());
    if (n == 0) n = kind == surfaces::Kind::An ? 3 : 4;
    try {
        return surfaces::SurfaceFamily(kind, n);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not a number: '" + item + "'");
        }
    }
    return out;
}

std::complex<double> parse_complex(const std::string& text) {
    const auto v = parse_list(text);
    if (v.size() == 1) return v[0];
    if (v.size() == 2) return {v[0], v[1]};
    throw UsageError("expected 're' or 're,im': '" + text + "'");
}

std::mt19937_64 sample_rng(std::uint64_t seed, int k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    return std::mt19937_64(seq);
}

std::vector<surfaces::ShearPoint> points_of(const Options& o) {
    const auto family = family_of(o);
    if (!o.Z.empty() || !o.Y.empty()) {
        const auto Z = parse_list(o.Z), Y = parse_list(o.Y);
        if (static_cast<int>(Z.size()) != family.n() || static_cast<int>(Y.size()) != family.y_count())
            throw UsageError("expected " + std::to_string(family.n()) + " Z and " + std::to_string(family.y_count()) +
                             " Y coordinates");
        return {surfaces::make_real_point(family, Z, Y)};
    }
    if (o.samples < 1) throw UsageError("--samples must be positive");
    std::vector<surfaces::ShearPoint> out;
    for (int k = 0; k < o.samples; ++k) {
        auto rng = sample_rng(o.seed, k);
        out.push_back(leaves::random_generic_point(family, rng));
    }
    return out;
}

Json point_json(const surfaces::ShearPoint& p) {
    Json z = Json::array(), y = Json::array();
    for (const auto& v : p.Z) z.push_back(v.real());
    for (const auto& v : p.Y) y.push_back(v.real());
    return Json{{"Z", z}, {"Y", y}};
}

std::vector<Json> parallel_records(int count, int jobs, const std::function<Json(int)>& fn) {
    std::vector<Json> out(count);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int k = next++; k < count; k = next++) {
            try {
                out[k] = fn(k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min(jobs, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace stokes::cli
