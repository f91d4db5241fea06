#pragma once

#include <functional>
#include <map>
#include <string>

#include "common.hpp"

namespace stokes::cli {

using Command = std::function<Report(const Options&)>;

// Brackets and symbolic identities.
Report cmd_verify_bracket(const Options& o);
Report cmd_stokes(const Options& o);
Report cmd_calibrate_incidence(const Options& o);
Report cmd_skein(const Options& o);
Report cmd_casimir(const Options& o);
Report cmd_trace_bracket_calibration(const Options& o);

// Spectra and leaves.
Report cmd_jordan(const Options& o);
Report cmd_leaf_dim(const Options& o);
Report cmd_rank(const Options& o);
Report cmd_minkowski(const Options& o);
Report cmd_markov(const Options& o);
Report cmd_char_identity(const Options& o);
Report cmd_isospectral(const Options& o);

// Isomonodromic flow.
Report cmd_flow(const Options& o);
Report cmd_pvi_check(const Options& o);
Report cmd_dual_monodromy(const Options& o);
Report cmd_commutator_report(const Options& o);

const std::map<std::string, Command>& command_table();

} // namespace stokes::cli
