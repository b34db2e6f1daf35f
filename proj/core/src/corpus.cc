// Copyright 2026 The Graphlin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphlin/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include <spdlog/spdlog.h>

#include "graphlin/penman.h"

namespace graphlin {
namespace {

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Value of "::key" on a metadata line, up to the next "::" field.
bool MetadataField(const std::string& line, const std::string& key, std::string* value) {
  const std::string marker = "::" + key;
  std::size_t at = line.find(marker);
  while (at != std::string::npos) {
    std::size_t end = at + marker.size();
    if (end == line.size() || line[end] == ' ' || line[end] == '\t') break;
    at = line.find(marker, end);
  }
  if (at == std::string::npos) return false;
  std::size_t begin = line.find_first_not_of(" \t", at + marker.size());
  if (begin == std::string::npos) {
    value->clear();
    return true;
  }
  std::size_t stop = key == "snt" ? std::string::npos : line.find(" ::", begin);
  std::string v = line.substr(begin, stop == std::string::npos ? std::string::npos : stop - begin);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\r' || v.back() == '\t')) v.pop_back();
  *value = std::move(v);
  return true;
}

}  // namespace

std::vector<AmrRecord> ReadAmrRecords(std::istream& in, const std::string& id_prefix) {
  std::vector<AmrRecord> records;
  AmrRecord current;
  bool open = false;
  std::size_t blocks = 0;
  auto flush = [&] {
    if (!open) return;
    open = false;
    ++blocks;
    // Metadata-only blocks (e.g. a file header) carry no graph.
    if (current.graph_text.empty()) {
      current = AmrRecord{};
      return;
    }
    if (current.id.empty()) current.id = id_prefix + std::to_string(blocks);
    records.push_back(std::move(current));
    current = AmrRecord{};
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (IsBlank(line)) {
      flush();
      continue;
    }
    if (!open) {
      open = true;
      current.line = lineno;
    }
    std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#') {
      std::string value;
      if (MetadataField(line, "id", &value)) current.id = value;
      if (MetadataField(line, "snt", &value)) current.sentence = value;
      continue;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!current.graph_text.empty()) current.graph_text += '\n';
    current.graph_text += line;
  }
  flush();
  return records;
}

AmrCorpus ParseAmrRecords(const std::vector<AmrRecord>& records, const LoadOptions& options) {
  AmrCorpus corpus;
  corpus.examples.reserve(records.size());
  for (const AmrRecord& r : records) {
    try {
      ParseStats stats;
      LinearTree tree = ParsePenman(r.graph_text, &stats);
      AmrGraph graph = TreeToGraph(tree, options.graph);
      corpus.alignments_stripped += stats.alignments_stripped;
      corpus.examples.push_back({r.id, r.sentence, std::move(tree), std::move(graph)});
    } catch (const std::runtime_error& e) {
      if (options.strict) throw;
      spdlog::warn("skipping {} (line {}): {}", r.id, r.line, e.what());
      corpus.failures.push_back({r.id, r.line, e.what()});
    }
  }
  if (corpus.alignments_stripped > 0) {
    spdlog::warn("stripped {} alignment marker(s)", corpus.alignments_stripped);
  }
  return corpus;
}

AmrCorpus LoadAmrCorpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseAmrRecords(ReadAmrRecords(in), options);
}

void WriteAmrCorpus(std::ostream& out, const std::vector<AmrExample>& examples) {
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const AmrExample& ex = examples[i];
    if (i) out << '\n';
    out << "# ::id " << ex.id << '\n';
    out << "# ::snt " << ex.sentence << '\n';
    out << FormatPenman(ex.tree) << '\n';
  }
}

}  // namespace graphlin
