#pragma once

#include <iosfwd>
#include <string>

#include "ppa/model.hpp"

namespace ppa {

inline constexpr const char* kModelSchema = "ppa-1";

// Line-oriented text document:
//
//   ppa-1
//   dims <d>
//   strategy <pca-based|gradient-descent>
//   mean <d values>
//   step <p> degree <g>          (p = 1 .. d-1, then the three lines below)
//   leading <m values>
//   complement <(m-1)*m values, row-major>
//   coeffs <(m-1)*(g+1) values, row-major>
//   end
//
// Values are written with 17 significant digits, so a saved model reproduces
// transforms bit for bit.
void write_model(std::ostream& os, const PpaModel& model);
PpaModel read_model(std::istream& is);

void save_model(const std::string& path, const PpaModel& model);
PpaModel load_model(const std::string& path);

}  // namespace ppa
