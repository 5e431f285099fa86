#pragma once

#include <stdexcept>
#include <string>

namespace law {

/// Module error carrying a stable code (E_NO_DATE, E_PARSE, ...) and an
/// optional locus (line:col, chunk index, contract id).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::string locus = {})
        : std::runtime_error(message), code_(std::move(code)), locus_(std::move(locus)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& locus() const noexcept { return locus_; }

private:
    std::string code_;
    std::string locus_;
};

}  // namespace law
