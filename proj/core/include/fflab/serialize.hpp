#pragma once

// File formats: JSON medium/solver descriptions, CSV field and far-field
// dumps, coefficient tables. All floating-point output goes through
// format_double (%.17g), so identical inputs produce byte-identical files.

#include <span>
#include <string>

#include "fflab/analyticity.hpp"
#include "fflab/farfield.hpp"
#include "fflab/forward.hpp"
#include "fflab/medium.hpp"
#include "fflab/types.hpp"

namespace fflab {

std::string format_double(double v);

// FNV-1a content hash of the grid geometry and cell values (hex string).
std::string medium_hash(const RefractiveIndexField& m);

// Medium description: {d, box:{center,half_width,resolution}, kind, params}.
// Kinds: "homogeneous", "disc" (params center, radius, n0), "bump" (params
// center, radius, amplitude), "values" (params values: row-major [re,im]
// pairs). Complex scalars are [re, im] arrays (a plain number means re).
RefractiveIndexField medium_from_json_text(const std::string& text);
std::string medium_to_json_text(const RefractiveIndexField& m);  // kind "values"

SolverConfig solver_config_from_json_text(const std::string& text);
std::string solver_config_to_json_text(const SolverConfig& cfg);

// columns: ix, iy, x, y, re, im
void write_field_csv(const std::string& path, const GridBox& grid, std::span<const cplx> values);

// columns: alpha_obs, beta_inc, re, im
void write_farfield_csv(const std::string& path, const FarFieldSamples& samples);
std::string farfield_header_json_text(const FarFieldSamples& samples,
                                      const std::string& medium_hash_hex);

// columns: m, n, abs, re, im (centered frequencies)
void write_decay_coefficients_csv(const std::string& path, const FourierDecayReport& report);

// columns: m, n, abs, re, im
void write_taylor_coefficients_csv(const std::string& path, const TaylorModel& model);

} // namespace fflab
