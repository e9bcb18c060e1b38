#ifndef JACOBI_CATALOG_HPP
#define JACOBI_CATALOG_HPP

#include <string>
#include <vector>

namespace jacobi {

/// Raw content of a bundled catalog file ("algebras.cat", ...). When the
/// JACOBI_CATALOG_DIR environment variable is set, the file is read from
/// that directory instead of the embedded copy.
std::string catalog_file(const std::string& name);

/// Splits a catalog file into records: '#' comments and blank lines are
/// dropped, remaining lines split on '|'. The first line must be the
/// version header "jacobi-catalog v1".
std::vector<std::vector<std::string>> catalog_records(const std::string& name);

}  // namespace jacobi

#endif
