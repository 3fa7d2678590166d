#include "bbt/data.hpp"

#include <cstdlib>

#ifndef BBT_DEFAULT_DATA_DIR
#define BBT_DEFAULT_DATA_DIR "data"
#endif

namespace bbt {

std::string data_dir() {
  if (const char* env = std::getenv("BBT_DATA_DIR"); env && *env) return env;
  return BBT_DEFAULT_DATA_DIR;
}

std::string data_path(const std::string& relative) { return data_dir() + "/" + relative; }

}  // namespace bbt
