#pragma once

#include <string>

// Helpers shared by the C API translation units.
namespace gu_capi {

// Copies a string into storage that gu_string_free releases.
char* dup_string(const std::string& s);

// Writes {"code","message"} into *err (no-op when err is null).
void store_error(char** err, const std::string& code, const std::string& message);

}  // namespace gu_capi
