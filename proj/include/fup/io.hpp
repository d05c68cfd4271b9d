#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "fup/baker.hpp"
#include "fup/cantor.hpp"
#include "fup/dft.hpp"
#include "fup/lines.hpp"
#include "fup/polymethod.hpp"

// JSON and CSV codecs for the on-disk schemas, plus atomic file writes.

namespace fup::io {

using json = nlohmann::json;

json alphabet_to_json(const Alphabet2D& a);
Alphabet2D alphabet_from_json(const json& j);

// 1D digit alphabets: {"M": 3, "digits": [0, 2]}.
struct Alphabet1D {
    std::int64_t M;
    std::vector<std::int64_t> digits;
};
json alphabet1d_to_json(const Alphabet1D& a);
Alphabet1D alphabet1d_from_json(const json& j);

json grid_set_to_json(const GridSet& s);
GridSet grid_set_from_json(const json& j);

json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const json& j);

json poly_to_json(const BivarPoly& p);
BivarPoly poly_from_json(const json& j);

json cutoff_to_json(const CutoffProfile& c);
CutoffProfile cutoff_from_json(const json& j);

json offset_to_json(const TorusOffset& offset);
json pair_verdict_to_json(const PairVerdict& verdict);

std::string norm_series_to_csv(const NormSeries& series);
std::string spectrum_csv_row(std::int64_t k, std::int64_t n, const std::vector<cd>& eigenvalues);

json load_json_file(const std::string& path);

// Writes through a temp file in the same directory, then renames.
void atomic_write(const std::string& path, const std::string& contents);

}  // namespace fup::io
