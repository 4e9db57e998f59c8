#include "qaoamc/instance_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qaoamc {

std::string instance_to_json(const SpinGlassInstance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.n();
  doc["seed"] = instance.seed();
  doc["couplings"] = std::vector<double>(instance.couplings().begin(), instance.couplings().end());
  doc["fields"] = std::vector<double>(instance.fields().begin(), instance.fields().end());
  return doc.dump(2) + "\n";
}

SpinGlassInstance instance_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  for (const char* key : {"n", "couplings", "fields"})
    if (!doc.contains(key)) throw std::invalid_argument(std::string("instance JSON: missing field '") + key + "'");
  const int n = doc.at("n").get<int>();
  const auto couplings = doc.at("couplings").get<std::vector<double>>();
  const auto fields = doc.at("fields").get<std::vector<double>>();
  const std::uint64_t seed = doc.value("seed", std::uint64_t{0});
  return {n, Eigen::Map<const Eigen::VectorXd>(couplings.data(), static_cast<Eigen::Index>(couplings.size())),
          Eigen::Map<const Eigen::VectorXd>(fields.data(), static_cast<Eigen::Index>(fields.size())), seed};
}

void write_instance(const std::filesystem::path& path, const SpinGlassInstance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(instance);
}

SpinGlassInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace qaoamc
