#include <fstream>
#include <sstream>
#include <string>

#include "tsview/bench.hpp"

namespace tsview::bench {
namespace {

// Value of a "Key:   123 kB" line, in bytes.
std::size_t read_kb_field(const char* file, std::string_view key) {
  std::ifstream in(file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.compare(0, key.size(), key) != 0 || line.size() <= key.size() ||
        line[key.size()] != ':') {
      continue;
    }
    std::istringstream fields(line.substr(key.size() + 1));
    std::size_t kb = 0;
    fields >> kb;
    return kb * 1024;
  }
  return 0;
}

}  // namespace

std::size_t current_rss_bytes() { return read_kb_field("/proc/self/status", "VmRSS"); }

std::size_t peak_rss_bytes() { return read_kb_field("/proc/self/status", "VmHWM"); }

bool reset_peak_rss() {
  std::ofstream out("/proc/self/clear_refs");
  if (!out) return false;
  out << "5";
  out.flush();
  return static_cast<bool>(out);
}

std::size_t available_memory_bytes() { return read_kb_field("/proc/meminfo", "MemAvailable"); }

}  // namespace tsview::bench
