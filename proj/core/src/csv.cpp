// SPDX-License-Identifier: Apache-2.0
//
// ddce - delay-Doppler channel estimation and link-level simulation
// Copyright (C) 2026 The ddce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ddce/harness.hpp"

namespace ddce {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

void check_field(const std::string& s) {
    if (s.find_first_of(",\n\r\"") != std::string::npos)
        throw std::invalid_argument("csv: text fields must not contain separators or quotes");
}

} // namespace

std::string csv_header() {
    return "experiment,method,axis_name,axis_value,metric_name,metric_value,ci_halfwidth,trials,seed";
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const auto& r : rows) {
        check_field(r.experiment);
        check_field(r.method);
        check_field(r.axis_name);
        check_field(r.metric_name);
        os << r.experiment << ',' << r.method << ',' << r.axis_name << ',' << fmt(r.axis_value) << ','
           << r.metric_name << ',' << fmt(r.metric_value) << ',' << fmt(r.ci_halfwidth) << ',' << r.trials
           << ',' << r.seed << '\n';
    }
    return os.str();
}

std::vector<ExperimentRow> parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header()) throw std::runtime_error("csv: unexpected header");
    std::vector<ExperimentRow> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split(line);
        if (f.size() != 9) throw std::runtime_error("csv: expected 9 fields");
        ExperimentRow r;
        r.experiment = f[0];
        r.method = f[1];
        r.axis_name = f[2];
        r.axis_value = to_double(f[3]);
        r.metric_name = f[4];
        r.metric_value = to_double(f[5]);
        r.ci_halfwidth = to_double(f[6]);
        r.trials = std::stol(f[7]);
        r.seed = std::stoull(f[8]);
        rows.push_back(r);
    }
    return rows;
}

void write_csv(const std::filesystem::path& path, const std::vector<ExperimentRow>& rows) {
    const std::string text = to_csv(rows);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

} // namespace ddce
