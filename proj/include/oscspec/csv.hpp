#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oscspec::csv {

/// Reals are printed with 17 significant digits so they round-trip exactly.
std::string format_real(double x);

using Field = std::variant<std::monostate, double, std::int64_t, std::string>;

/// Comma-separated writer with LF line endings.  Opened in binary mode so no
/// platform newline translation takes place.
class Writer {
 public:
  Writer(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  void row(const std::vector<Field>& fields);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace oscspec::csv
