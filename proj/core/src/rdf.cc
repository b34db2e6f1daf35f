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

#include "graphlin/rdf.h"

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include "json.hpp"

#include "graphlin/corpus.h"

namespace graphlin {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void AppendWords(std::string_view text, std::vector<std::string>& out) {
  TokenSeq words = TokenSeq::Split(text);
  for (std::string& w : words.tokens) out.push_back(std::move(w));
}

RdfTriple CleanTriple(std::string_view s, std::string_view p, std::string_view o) {
  return {CleanEntity(s), Trim(p), CleanEntity(o)};
}

}  // namespace

void ValidateRdfEntry(const RdfEntry& entry) {
  if (entry.triples.empty()) throw RdfError("entry '" + entry.id + "' has no triples");
  if (entry.references.empty()) throw RdfError("entry '" + entry.id + "' has no references");
  for (const RdfTriple& t : entry.triples) {
    for (const std::string* field : {&t.subject, &t.predicate, &t.object}) {
      if (Trim(*field).empty()) throw RdfError("entry '" + entry.id + "' has an empty field");
      for (const std::string& word : TokenSeq::Split(*field).tokens) {
        if (IsSpecialToken(word)) {
          throw RdfError("entry '" + entry.id + "' uses reserved token " + word);
        }
      }
    }
  }
}

std::string SplitPredicate(std::string_view predicate) {
  std::string out;
  char prev = ' ';
  for (char c : predicate) {
    if (c == '_' || std::isspace(static_cast<unsigned char>(c))) {
      c = ' ';
    } else if (std::isupper(static_cast<unsigned char>(c)) &&
               (std::islower(static_cast<unsigned char>(prev)) ||
                std::isdigit(static_cast<unsigned char>(prev)))) {
      out += ' ';
    }
    if (c == ' ' && (out.empty() || out.back() == ' ')) {
      prev = c;
      continue;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    prev = c;
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string CleanEntity(std::string_view entity) {
  std::string s = Trim(entity);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  for (char& c : s) {
    if (c == '_') c = ' ';
  }
  return Trim(TokenSeq{TokenSeq::Split(s).tokens}.Join());
}

TokenSeq LinearizeRdf(const RdfEntry& entry) {
  TokenSeq seq;
  for (const RdfTriple& t : entry.triples) {
    seq.tokens.emplace_back(kRelToken);
    seq.tokens.emplace_back(kSubjectToken);
    AppendWords(t.subject, seq.tokens);
    seq.tokens.emplace_back(kPredicateToken);
    AppendWords(SplitPredicate(t.predicate), seq.tokens);
    seq.tokens.emplace_back(kObjectToken);
    AppendWords(t.object, seq.tokens);
  }
  return seq;
}

RdfEntry RandomizeRdf(const RdfEntry& entry, Rng& rng) {
  RdfEntry out = entry;
  rng.Shuffle(out.triples);
  return out;
}

std::vector<RdfEntry> ReadWebNlgXml(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree root;
  try {
    pt::read_xml(in, root, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw RdfError(std::string("malformed WebNLG XML: ") + e.what());
  }
  std::vector<RdfEntry> entries;
  const auto& list = root.get_child("benchmark.entries");
  for (const auto& [tag, node] : list) {
    if (tag != "entry") continue;
    RdfEntry entry;
    entry.id = node.get<std::string>("<xmlattr>.eid", "");
    entry.category = node.get<std::string>("<xmlattr>.category", "");
    for (const auto& [child_tag, child] : node) {
      if (child_tag == "modifiedtripleset") {
        for (const auto& [mt_tag, mtriple] : child) {
          if (mt_tag != "mtriple") continue;
          std::string text = mtriple.data();
          std::size_t a = text.find('|');
          std::size_t b = a == std::string::npos ? a : text.find('|', a + 1);
          if (b == std::string::npos) {
            throw RdfError("entry '" + entry.id + "': malformed triple '" + text + "'");
          }
          entry.triples.push_back(CleanTriple(std::string_view(text).substr(0, a),
                                              std::string_view(text).substr(a + 1, b - a - 1),
                                              std::string_view(text).substr(b + 1)));
        }
      } else if (child_tag == "lex") {
        // Newer releases nest the text in <text>.
        std::string text = child.get<std::string>("text", child.data());
        entry.references.push_back(Trim(text));
      }
    }
    if (entry.id.empty()) entry.id = "webnlg" + std::to_string(entries.size() + 1);
    ValidateRdfEntry(entry);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<RdfEntry> ReadRdfJsonl(std::istream& in) {
  std::vector<RdfEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    RdfEntry entry;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      entry.id = j.value("id", "rdf" + std::to_string(entries.size() + 1));
      entry.category = j.value("category", "");
      for (const auto& t : j.at("triples")) {
        if (t.size() != 3) throw RdfError("triple must have 3 fields");
        entry.triples.push_back(CleanTriple(t[0].get<std::string>(), t[1].get<std::string>(),
                                            t[2].get<std::string>()));
      }
      for (const auto& r : j.at("refs")) entry.references.push_back(r.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw RdfError("line " + std::to_string(lineno) + ": " + e.what());
    }
    ValidateRdfEntry(entry);
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<RdfEntry> LoadRdfCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  if (path.extension() == ".xml") return ReadWebNlgXml(in);
  return ReadRdfJsonl(in);
}

}  // namespace graphlin
