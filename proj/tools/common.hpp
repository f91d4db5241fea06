#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"
#include "stokes/surfaces.hpp"

namespace stokes::cli {

/// Bad flags, unknown commands, unreadable configs: exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family = "an";
    int n = 0;
    std::string Z, Y;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int samples = 10;
    std::string emit = "json";
    int jobs = 1;
    bool dump_symbolic = false;

    std::string X;
    std::string q;
    std::string mu;
    std::string indices = "1,2,3,4";
    double t0 = 0.25, t1 = 0.75;
    double step = 1e-3, span = 1.0;
    int coordinate = 2;
    int stride = 10;
    double norm = 1.0;
    bool generic = false;
};

/// Parameters echoed at the top of every report.
Json params_json(const std::string& command, const Options& o);

surfaces::SurfaceFamily family_of(const Options& o);

std::vector<double> parse_list(const std::string& text);

/// "re" or "re,im".
std::complex<double> parse_complex(const std::string& text);

/// Independent generator for sample k; the same for every --jobs value.
std::mt19937_64 sample_rng(std::uint64_t seed, int k);

/// The point given by --Z/--Y, or `samples` random points bounded away from
/// degenerate perimeters.
std::vector<surfaces::ShearPoint> points_of(const Options& o);

Json point_json(const surfaces::ShearPoint& p);

/// Runs fn(0..count-1) over `jobs` threads; results come back in index order.
std::vector<Json> parallel_records(int count, int jobs, const std::function<Json(int)>& fn);

} // namespace stokes::cli
