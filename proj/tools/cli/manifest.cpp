#include <cli/manifest.hpp>

#include <dircomm/version.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace dircomm::cli {

Manifest::Manifest(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void Manifest::param(const std::string &key, const std::string &value) { params_[key] = value; }

void Manifest::output(const std::string &path) { outputs_.push_back(path); }

void Manifest::note(const std::string &key, const std::string &value) { notes_[key] = value; }

void Manifest::phase(const std::string &name) {
    close_phase();
    current_ = name;
    started_ = std::chrono::steady_clock::now();
}

void Manifest::close_phase() {
    if (current_.empty())
        return;
    const auto elapsed = std::chrono::steady_clock::now() - started_;
    timings_.emplace_back(current_, std::chrono::duration<double, std::milli>(elapsed).count());
    current_.clear();
}

void Manifest::write(const std::string &path) {
    close_phase();
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    doc["tool_version"] = version;
    doc["master_seed"] = seed_;
    doc["parameters"] = params_;
    doc["outputs"] = outputs_;
    if (!notes_.empty())
        doc["notes"] = notes_;
    nlohmann::ordered_json timings = nlohmann::ordered_json::object();
    for (const auto &[name, ms] : timings_)
        timings[name + "_ms"] = ms;
    doc["timings"] = timings;
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write manifest '" + path + "'");
    out << doc.dump(2) << '\n';
}

} // namespace dircomm::cli
