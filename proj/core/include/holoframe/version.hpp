#pragma once

#include <string>

namespace holo {

std::string library_version();
std::string eigen_version();
std::string fftw_version();

}  // namespace holo
