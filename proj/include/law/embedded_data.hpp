#pragma once

#include <optional>
#include <string_view>

namespace law {

/// Contents of a file under data/ (e.g. "lexicons/termination.txt"),
/// compiled into the library.
std::optional<std::string_view> embedded_file(std::string_view relative_path);

}  // namespace law
