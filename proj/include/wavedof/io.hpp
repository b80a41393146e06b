// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wavedof/coupling.hpp"

#include <json.hpp>

namespace wavedof {

/// FNV-1a 64-bit of the canonical `key=value` config serialization; embedded
/// in every output so runs are traceable to their exact settings.
std::string settings_hash(const std::map<std::string, std::string>& settings);

/// CSV with columns m_x,m_y,sigma_sq plus optional ci_half_width and
/// reference/relative-error columns. `settings` becomes `# key=value`
/// comment lines with the settings hash.
void write_spectrum_csv(std::ostream& out, const CouplingSpectrum& spec,
                        const std::map<std::string, std::string>& settings,
                        const std::vector<double>* ci_half_width = nullptr,
                        const CouplingSpectrum* reference = nullptr);

nlohmann::json spectrum_to_json(const CouplingSpectrum& spec,
                                const std::map<std::string, std::string>& settings,
                                const std::vector<double>* ci_half_width = nullptr,
                                const CouplingSpectrum* reference = nullptr);

}  // namespace wavedof
