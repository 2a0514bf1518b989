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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "meetsum/corpus.hpp"

namespace meetsum {

enum class TranscriptFormat { kJson, kConllu };

// Parses one meeting. Throws ParseError on malformed syntax and
// ValidationError when the parsed data breaks a Meeting invariant.
Meeting parse_transcript(std::string_view text, TranscriptFormat format,
                         const Lexicon& lexicon = Lexicon::standard());

std::string write_transcript_json(const Meeting& meeting);
std::string write_transcript_conllu(const Meeting& meeting);

// Format chosen by extension: .conllu / .conll, anything else is JSON.
Meeting load_transcript(const std::filesystem::path& path,
                        const Lexicon& lexicon = Lexicon::standard());

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace meetsum
