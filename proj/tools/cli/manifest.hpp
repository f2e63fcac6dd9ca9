#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dircomm::cli {

/// Provenance record written next to every output. Timings are the only
/// non-deterministic part and live only here, never in result files.
class Manifest {
public:
    Manifest(std::string command, std::uint64_t seed);

    void param(const std::string &key, const std::string &value);
    void output(const std::string &path);
    void note(const std::string &key, const std::string &value);

    /// Starts (or restarts) a wall-clock phase; the previous phase is closed.
    void phase(const std::string &name);

    void write(const std::string &path);

private:
    void close_phase();

    std::string command_;
    std::uint64_t seed_;
    std::map<std::string, std::string> params_;
    std::map<std::string, std::string> notes_;
    std::vector<std::string> outputs_;
    std::vector<std::pair<std::string, double>> timings_;
    std::string current_;
    std::chrono::steady_clock::time_point started_;
};

} // namespace dircomm::cli
