#include "vistain/stain_io.hpp"

#include <fstream>
#include <json.hpp>

namespace vistain {

using nlohmann::json;

std::string reference_to_json(const NormalizationReference& ref) {
  json doc;
  doc["stains"] = {{ref.stain_matrix.rows(0, 0), ref.stain_matrix.rows(0, 1), ref.stain_matrix.rows(0, 2)},
                   {ref.stain_matrix.rows(1, 0), ref.stain_matrix.rows(1, 1), ref.stain_matrix.rows(1, 2)}};
  doc["max_concentration"] = {ref.max_concentration[0], ref.max_concentration[1]};
  return doc.dump(2) + "\n";
}

NormalizationReference reference_from_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }

  NormalizationReference ref;
  try {
    const auto& stains = doc.at("stains");
    if (!stains.is_array() || stains.size() != 2)
      throw ParseError(origin + ": \"stains\" must hold two rows");
    for (int r = 0; r < 2; ++r) {
      const auto& row = stains.at(static_cast<std::size_t>(r));
      if (!row.is_array() || row.size() != 3)
        throw ParseError(origin + ": stain row " + std::to_string(r) + " must hold 3 values");
      for (int c = 0; c < 3; ++c)
        ref.stain_matrix.rows(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    const auto& mc = doc.at("max_concentration");
    if (!mc.is_array() || mc.size() != 2)
      throw ParseError(origin + ": \"max_concentration\" must hold 2 values");
    ref.max_concentration[0] = mc.at(0).get<double>();
    ref.max_concentration[1] = mc.at(1).get<double>();
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }

  try {
    ref.validate();
  } catch (const Error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  return ref;
}

void write_reference(const std::string& path, const NormalizationReference& ref) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << reference_to_json(ref);
  if (!out) throw IoError("failed writing: " + path);
}

NormalizationReference read_reference(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return reference_from_json(text, path);
}

std::string sdc_report_to_json(const SdcReport& report) {
  json doc;
  doc["stains"] = json::array();
  for (const SdcStainReport& s : report.stains) {
    doc["stains"].push_back({{"threshold", s.threshold},
                             {"target_positive", s.target_positive},
                             {"virtual_positive", s.virtual_positive},
                             {"intersection", s.intersection},
                             {"dice", s.dice}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace vistain
