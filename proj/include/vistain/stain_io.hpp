#ifndef VISTAIN_STAIN_IO_HPP
#define VISTAIN_STAIN_IO_HPP

#include <string>

#include "vistain/sdc.hpp"
#include "vistain/stain.hpp"

namespace vistain {

// Reference document: {"stains": [[3 floats], [3 floats]],
// "max_concentration": [2 floats]}. The reader re-validates the stain-matrix
// invariants.
std::string reference_to_json(const NormalizationReference& ref);
NormalizationReference reference_from_json(const std::string& text, const std::string& origin);
void write_reference(const std::string& path, const NormalizationReference& ref);
NormalizationReference read_reference(const std::string& path);

std::string sdc_report_to_json(const SdcReport& report);

}  // namespace vistain

#endif
