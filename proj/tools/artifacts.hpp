#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace socdim::tools {

// Output files of one command. Each file is written next to its final path
// with a ".partial" suffix and renamed by commit(); anything not committed is
// deleted when the set is destroyed.
class ArtifactSet {
 public:
  ArtifactSet(std::filesystem::path dir, std::string command, std::uint64_t seed);
  ~ArtifactSet();
  ArtifactSet(const ArtifactSet&) = delete;
  ArtifactSet& operator=(const ArtifactSet&) = delete;

  // CSV stream that starts with a "# socdim <command> seed=... created=..."
  // line followed by the column header.
  std::ofstream& csv(const std::string& name, const std::vector<std::string>& columns);
  // Plain stream without the header line (JSON).
  std::ofstream& raw(const std::string& name);

  void commit();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Entry {
    std::filesystem::path final_path;
    std::filesystem::path partial_path;
    std::unique_ptr<std::ofstream> stream;
  };
  std::ofstream& open(const std::string& name);

  std::filesystem::path dir_;
  std::string command_;
  std::uint64_t seed_;
  std::vector<Entry> entries_;
  bool committed_ = false;
};

std::string header_line(const std::string& command, std::uint64_t seed);

}  // namespace socdim::tools
