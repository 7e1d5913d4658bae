#include "oscspec/csv.hpp"

#include <fmt/format.h>

#include "oscspec/error.hpp"

namespace oscspec::csv {

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

Writer::Writer(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw Error(ErrorCode::invalid_parameters, "cannot open " + path.string() + " for writing");
  bool first = true;
  for (auto name : header) {
    if (!first) out_ << ',';
    out_ << name;
    first = false;
  }
  out_ << '\n';
}

void Writer::row(const std::vector<Field>& fields) {
  if (fields.size() != columns_) throw Error(ErrorCode::invalid_parameters, "CSV row has wrong column count");
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k > 0) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            out_ << format_real(v);
          } else if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::string>) {
            out_ << v;
          }
        },
        fields[k]);
  }
  out_ << '\n';
}

}  // namespace oscspec::csv
