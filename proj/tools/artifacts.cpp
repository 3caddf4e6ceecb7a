#include "artifacts.hpp"

#include <chrono>
#include <ctime>

#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim::tools {

namespace fs = std::filesystem;

std::string header_line(const std::string& command, std::uint64_t seed) {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return "# socdim " + command + " seed=" + std::to_string(seed) + " created=" + stamp;
}

ArtifactSet::ArtifactSet(fs::path dir, std::string command, std::uint64_t seed)
    : dir_(std::move(dir)), command_(std::move(command)), seed_(seed) {}

ArtifactSet::~ArtifactSet() {
  if (committed_) return;
  for (auto& e : entries_) {
    e.stream.reset();
    std::error_code ec;
    fs::remove(e.partial_path, ec);
  }
}

std::ofstream& ArtifactSet::open(const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  Entry e;
  e.final_path = dir_ / name;
  e.partial_path = dir_ / (name + ".partial");
  e.stream = std::make_unique<std::ofstream>(e.partial_path, std::ios::binary | std::ios::trunc);
  if (!*e.stream) throw IoError("cannot write " + e.partial_path.string());
  entries_.push_back(std::move(e));
  return *entries_.back().stream;
}

std::ofstream& ArtifactSet::csv(const std::string& name, const std::vector<std::string>& columns) {
  auto& out = open(name);
  out << header_line(command_, seed_) << "\n";
  csv::write_row(out, columns);
  return out;
}

std::ofstream& ArtifactSet::raw(const std::string& name) { return open(name); }

void ArtifactSet::commit() {
  for (auto& e : entries_) {
    e.stream->flush();
    if (!*e.stream) throw IoError("write failed for " + e.partial_path.string());
    e.stream->close();
  }
  for (auto& e : entries_) fs::rename(e.partial_path, e.final_path);
  committed_ = true;
}

}  // namespace socdim::tools
