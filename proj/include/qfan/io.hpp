#pragma once

#include "qfan/fan.hpp"

#include <optional>
#include <string>

namespace qfan {

struct FanFile {
    FanData fan;
    std::optional<IMat> nef_basis;
};

/* JSON or TOML (decided by extension, ".toml" vs anything else); 1-based cone
 * indices in the file, rays as integer arrays. */
FanFile parse_fan_file(const std::string& path);
FanFile parse_fan_text(const std::string& text, bool toml);

}  // namespace qfan
