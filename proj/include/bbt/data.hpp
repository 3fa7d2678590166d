#pragma once

#include <string>

namespace bbt {

// Root of the bundled data tree; BBT_DATA_DIR overrides the build-time path.
std::string data_dir();
std::string data_path(const std::string& relative);

}  // namespace bbt
