// Copyright 2026 The meetsum Authors
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

#include "meetsum/transcript_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "meetsum/error.hpp"

namespace meetsum {

using nlohmann::json;

namespace {

// Converts a byte offset into 1-based line/column.
std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + key + "' has wrong type");
  }
}

Meeting meeting_from_json(const json& doc, const Lexicon& lexicon) {
  if (!doc.is_object()) throw ValidationError("transcript root is not an object");
  Meeting m;
  m.id = require<std::string>(doc, "id", "meeting");
  if (auto it = doc.find("gold_abstract"); it != doc.end() && !it->is_null()) {
    if (it->is_string()) {
      m.gold_abstract = tokenize_words(it->get<std::string>());
    } else {
      m.gold_abstract = it->get<std::vector<std::string>>();
    }
  }
  const auto utts = require<json>(doc, "utterances", "meeting '" + m.id + "'");
  if (!utts.is_array()) throw ValidationError("'utterances' is not an array");
  for (const auto& ju : utts) {
    Utterance u;
    u.id = require<std::string>(ju, "id", "utterance");
    const std::string where = "utterance '" + u.id + "'";
    u.speaker = require<std::string>(ju, "speaker", where);
    u.position = m.utterances.size();
    std::size_t index = 0;
    for (const auto& jt : require<json>(ju, "tokens", where)) {
      u.tokens.push_back(make_token(index++,
                                    require<std::string>(jt, "surface", where),
                                    require<std::string>(jt, "pos", where),
                                    lexicon));
    }
    for (const auto& je : require<json>(ju, "edges", where)) {
      DependencyEdge e;
      e.governor = require<int>(je, "gov", where);
      e.dependent = require<int>(je, "dep", where);
      e.label = require<std::string>(je, "label", where);
      u.edges.push_back(std::move(e));
    }
    if (auto it = ju.find("gold_in_summary"); it != ju.end() && !it->is_null()) {
      u.gold_in_summary = it->get<bool>();
    }
    m.utterances.push_back(std::move(u));
  }
  return m;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Meeting meeting_from_conllu(std::string_view text, const Lexicon& lexicon) {
  Meeting m;
  Utterance cur;
  bool open = false;
  std::size_t line_no = 0;

  auto finish = [&] {
    if (!open) return;
    cur.position = m.utterances.size();
    if (cur.id.empty()) cur.id = "u" + std::to_string(cur.position);
    m.utterances.push_back(std::move(cur));
    cur = Utterance{};
    open = false;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;

    if (line.empty()) {
      finish();
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      auto key = trim(line.substr(1, eq - 1));
      auto value = std::string(trim(line.substr(eq + 1)));
      if (key == "newdoc id" || key == "meeting_id") {
        m.id = value;
      } else if (key == "gold_abstract") {
        m.gold_abstract = tokenize_words(value);
      } else if (key == "sent_id") {
        cur.id = value;
        open = true;
      } else if (key == "speaker") {
        cur.speaker = value;
        open = true;
      } else if (key == "gold_in_summary") {
        cur.gold_in_summary = (value == "true" || value == "1");
        open = true;
      }
      continue;
    }

    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no, 1);
    }
    // Multiword ranges and empty nodes carry no dependency of their own.
    if (cols[0].find('-') != std::string_view::npos ||
        cols[0].find('.') != std::string_view::npos) {
      continue;
    }
    int id = 0, head = 0;
    auto parse_int = [&](std::string_view s, int& out, std::size_t col) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError("bad integer '" + std::string(s) + "'", line_no, col);
      }
    };
    parse_int(cols[0], id, 1);
    parse_int(cols[6], head, 7);
    open = true;
    if (id != static_cast<int>(cur.tokens.size()) + 1) {
      throw ParseError("token ids must be consecutive from 1", line_no, 1);
    }
    std::string pos(cols[4] == "_" ? cols[3] : cols[4]);
    cur.tokens.push_back(
        make_token(cur.tokens.size(), std::string(cols[1]), pos, lexicon));
    DependencyEdge e;
    e.governor = head == 0 ? kRootGovernor : head - 1;
    e.dependent = id - 1;
    e.label = std::string(cols[7]);
    cur.edges.push_back(std::move(e));
  }
  finish();
  if (m.id.empty()) m.id = "meeting";
  return m;
}

}  // namespace

Meeting parse_transcript(std::string_view text, TranscriptFormat format,
                         const Lexicon& lexicon) {
  Meeting m;
  if (format == TranscriptFormat::kJson) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
      throw ParseError(std::string("malformed JSON: ") + e.what(), line, col);
    }
    m = meeting_from_json(doc, lexicon);
  } else {
    m = meeting_from_conllu(text, lexicon);
  }
  validate_meeting(m);
  return m;
}

std::string write_transcript_json(const Meeting& meeting) {
  json doc;
  doc["id"] = meeting.id;
  if (meeting.gold_abstract) doc["gold_abstract"] = *meeting.gold_abstract;
  json utts = json::array();
  for (const auto& u : meeting.utterances) {
    json ju;
    ju["id"] = u.id;
    ju["speaker"] = u.speaker;
    json toks = json::array();
    for (const auto& t : u.tokens) toks.push_back({{"surface", t.surface}, {"pos", t.pos}});
    ju["tokens"] = std::move(toks);
    json edges = json::array();
    for (const auto& e : u.edges) {
      edges.push_back({{"gov", e.governor}, {"dep", e.dependent}, {"label", e.label}});
    }
    ju["edges"] = std::move(edges);
    if (u.gold_in_summary) ju["gold_in_summary"] = *u.gold_in_summary;
    utts.push_back(std::move(ju));
  }
  doc["utterances"] = std::move(utts);
  return doc.dump(1) + "\n";
}

std::string write_transcript_conllu(const Meeting& meeting) {
  std::ostringstream out;
  out << "# newdoc id = " << meeting.id << "\n";
  if (meeting.gold_abstract) {
    out << "# gold_abstract =";
    for (const auto& w : *meeting.gold_abstract) out << ' ' << w;
    out << "\n";
  }
  for (const auto& u : meeting.utterances) {
    out << "# sent_id = " << u.id << "\n";
    out << "# speaker = " << u.speaker << "\n";
    if (u.gold_in_summary) {
      out << "# gold_in_summary = " << (*u.gold_in_summary ? "true" : "false") << "\n";
    }
    for (const auto& t : u.tokens) {
      const auto* e = u.head_edge(t.index);
      const int head = (e == nullptr || e->is_root()) ? 0 : e->governor + 1;
      out << t.index + 1 << '\t' << t.surface << '\t' << t.norm << '\t' << '_'
          << '\t' << t.pos << '\t' << '_' << '\t' << head << '\t'
          << (e ? e->label : "dep") << '\t' << '_' << '\t' << '_' << "\n";
    }
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
}

Meeting load_transcript(const std::filesystem::path& path, const Lexicon& lexicon) {
  const auto ext = path.extension().string();
  const auto format = (ext == ".conllu" || ext == ".conll") ? TranscriptFormat::kConllu
                                                            : TranscriptFormat::kJson;
  if (!std::filesystem::exists(path)) {
    throw ConfigError("transcript not found: " + path.string());
  }
  return parse_transcript(read_file(path), format, lexicon);
}

}  // namespace meetsum
