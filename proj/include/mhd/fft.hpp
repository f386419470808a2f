#pragma once
// Thin wrapper over FFTW's 2D real transforms with cached, deterministic plans.

#include "mhd/grid.hpp"

namespace mhd {

// f -> spectrum, normalized by 1/N^2.
Spectrum forward(const Field& f);
// spectrum -> f.  The input is not modified.
Field inverse(const Spectrum& s);
void inverse_into(const Spectrum& s, Field& out);

}  // namespace mhd
