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

// Writes seeded synthetic topic meetings as JSON transcripts, for trying the
// pipeline without real data.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>

#include "meetsum/transcript_io.hpp"
#include "synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic meetings"};
  std::size_t count = 1, topics = 5, per_topic = 20;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  app.add_option("-n,--count", count, "Number of meetings");
  app.add_option("--topics", topics);
  app.add_option("--per-topic", per_topic, "Utterances per topic");
  app.add_option("--seed", seed);
  app.add_option("-o,--out-dir", out_dir);
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < count; ++i) {
      meetsum::synth::TopicMeetingSpec spec;
      spec.topics = topics;
      spec.per_topic = per_topic;
      spec.seed = seed + i;
      spec.id = "synthetic" + std::to_string(i);
      const auto path = std::filesystem::path(out_dir) / (spec.id + ".json");
      meetsum::write_file(path, meetsum::write_transcript_json(meetsum::synth::topic_meeting(spec)));
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
