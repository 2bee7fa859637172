// include/pianomt/midi.h

// Copyright 2026 The pianomt Authors
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

#ifndef PIANOMT_MIDI_H_
#define PIANOMT_MIDI_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pianomt {

// Standard MIDI File reader/writer for the subset piano groundtruth needs:
// formats 0/1, metrical time division, note on/off, sustain (CC64), tempo.
// Everything else is skipped with correct length accounting. The writer
// always emits explicit status bytes; the reader resolves running status.

enum class MidiErrorKind {
  kBadHeader,
  kUnsupportedFormat,
  kTruncated,
  kUnterminatedVlq,
  kKeyOutOfRange,
};

class MidiError : public std::runtime_error {
 public:
  MidiError(MidiErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  MidiErrorKind kind() const { return kind_; }

 private:
  MidiErrorKind kind_;
};

enum class MidiEventKind {
  kNoteOn,
  kNoteOff,
  kControlChange,
  kTempoMeta,
  kEndOfTrack,
  kOtherIgnored,
};

struct MidiEvent {
  int64_t tick = 0;         // absolute, in ticks
  double seconds = 0.0;     // absolute, via the tempo map
  MidiEventKind kind = MidiEventKind::kOtherIgnored;
  uint8_t channel = 0;      // 0-15
  uint8_t data1 = 0;        // key or controller number, 0-127
  uint8_t data2 = 0;        // velocity or controller value, 0-127
  uint32_t tempo_us_per_quarter = 0;  // TempoMeta only

  bool operator==(const MidiEvent& o) const {
    return tick == o.tick && kind == o.kind && channel == o.channel &&
           data1 == o.data1 && data2 == o.data2 &&
           tempo_us_per_quarter == o.tempo_us_per_quarter;
  }
};

// (key, onset, offset, velocity) in seconds. offset > onset always.
struct Note {
  int key = 0;          // MIDI pitch, 21-108
  double onset = 0.0;
  double offset = 0.0;
  int velocity = 0;     // 0-127

  bool operator==(const Note& o) const {
    return key == o.key && onset == o.onset && offset == o.offset &&
           velocity == o.velocity;
  }
};

struct SustainEvent {
  double time = 0.0;
  int value = 0;  // raw controller value, 0-127

  bool operator==(const SustainEvent& o) const {
    return time == o.time && value == o.value;
  }
};

struct SmfFile {
  int format = 0;
  int ticks_per_quarter = 480;
  std::vector<std::vector<MidiEvent>> tracks;
  std::vector<std::string> warnings;
};

inline constexpr int kKeyLow = 21;
inline constexpr int kKeyHigh = 108;
inline constexpr int kNumKeys = 88;
inline constexpr int kSustainController = 64;
inline constexpr uint32_t kDefaultTempo = 500000;  // us per quarter

// Variable-length quantity. Decodes at most 4 bytes; values < 2^28.
// Throws MidiError(kUnterminatedVlq) after 4 continuation bytes and
// MidiError(kTruncated) if the input ends mid-value.
std::pair<uint32_t, size_t> read_vlq(const std::vector<uint8_t>& bytes,
                                     size_t pos);
void write_vlq(uint32_t value, std::vector<uint8_t>& out);

// Parses an SMF image. Absolute ticks come from the running delta sum and
// seconds from the merged tempo map (default 500000 us/quarter before the
// first tempo event). NoteOn with velocity 0 is normalized to NoteOff.
SmfFile parse_smf(const std::vector<uint8_t>& bytes);

// Serializes events (absolute ticks) back to SMF. Explicit status bytes,
// one MTrk per track, EndOfTrack appended when missing.
std::vector<uint8_t> write_smf(const SmfFile& file);

struct NoteExtraction {
  std::vector<Note> notes;
  std::vector<std::string> warnings;  // dangling note-ons, stray note-offs
};

// Pairs NoteOn with the earliest subsequent NoteOff of the same key/channel
// (FIFO), sorted by onset then key. Keys outside [21, 108] throw
// MidiError(kKeyOutOfRange). Dangling NoteOns are dropped with a warning.
NoteExtraction extract_notes(const std::vector<MidiEvent>& events);

// All CC64 events as (seconds, value), time-sorted.
std::vector<SustainEvent> extract_sustain(const std::vector<MidiEvent>& events);

// Sustain pedal offset correction. Pedal is ON at t iff the most recent
// value is strictly greater than `threshold`. A note whose key release falls
// while the pedal is ON keeps sounding until the pedal next turns OFF (or
// `end_of_piece` if it never does). Pressing the pedal after a key release
// does not resurrect the note, and a re-strike of the same key truncates the
// previous note's extended tail at the new onset.
std::vector<Note> apply_sustain_correction(
    const std::vector<Note>& notes, const std::vector<SustainEvent>& sustain,
    int threshold = 64, double end_of_piece = -1.0);

// Convenience: flattens all tracks into one seconds-ordered event list.
std::vector<MidiEvent> merge_tracks(const SmfFile& file);

}  // namespace pianomt

#endif  // PIANOMT_MIDI_H_
