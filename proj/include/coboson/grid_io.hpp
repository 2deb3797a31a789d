#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coboson/schmidt.hpp"

namespace coboson {

// WFGRID v1 text format:
//   line 1: WFGRID v1 <rows> <cols>
//   line 2: <rows> xa coordinates
//   line 3: <cols> xb coordinates
//   then rows*cols lines "re im", row-major.
WaveFunctionGrid read_wfgrid(std::istream& in);
WaveFunctionGrid read_wfgrid_file(const std::string& path);
void write_wfgrid(std::ostream& out, const WaveFunctionGrid& grid);
void write_wfgrid_file(const std::string& path, const WaveFunctionGrid& grid);

struct SpectrumFile {
    SchmidtSpectrum spectrum;   // normalized on load
    double raw_sum = 0.0;       // sum of the eigenvalues as given
    bool normalization_warning = false;  // |raw_sum - 1| > 1e-6
};

// One eigenvalue per line; '#' starts a comment, blank lines are skipped.
SpectrumFile read_spectrum(std::istream& in);
SpectrumFile read_spectrum_file(const std::string& path);

}  // namespace coboson
