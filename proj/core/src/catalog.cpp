#include "jacobi/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jacobi_embedded_data.hpp"

namespace jacobi {

std::string catalog_file(const std::string& name) {
  if (const char* dir = std::getenv("JACOBI_CATALOG_DIR")) {
    std::string path = std::string(dir) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("JACOBI_CATALOG_DIR set but cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const auto& files = embedded::data_files();
  auto it = files.find(name);
  if (it == files.end()) throw std::runtime_error("unknown catalog file " + name);
  return it->second;
}

std::vector<std::vector<std::string>> catalog_records(const std::string& name) {
  std::string content = catalog_file(name);
  std::istringstream in(content);
  std::string line;
  std::vector<std::vector<std::string>> records;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    if (!header_seen) {
      if (line.substr(start) != "jacobi-catalog v1")
        throw std::runtime_error(name + ": missing 'jacobi-catalog v1' header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, '|')) fields.push_back(field);
    records.push_back(std::move(fields));
  }
  if (!header_seen) throw std::runtime_error(name + ": empty catalog file");
  return records;
}

}  // namespace jacobi
