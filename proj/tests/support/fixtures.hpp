#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rightsrisk/dsl.hpp"

namespace rightsrisk::rrtest {

inline std::filesystem::path samples_dir() { return RIGHTSRISK_SAMPLES_DIR; }

inline std::string sample_path(const std::string& name) { return (samples_dir() / name).string(); }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline KnowledgeBase load_sample(const std::string& name) {
    const auto path = sample_path(name);
    return dsl::parse_kb(read_text(path), path);
}

inline std::vector<std::string> sample_names() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(samples_dir()))
        if (e.path().extension() == ".rights") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rightsrisk::rrtest
