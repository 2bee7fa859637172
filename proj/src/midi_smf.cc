// src/midi_smf.cc

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

#include <algorithm>
#include <cstring>

#include "pianomt/midi.h"

namespace pianomt {

namespace {

uint8_t u8_at(const std::vector<uint8_t>& b, size_t pos) {
  if (pos >= b.size())
    throw MidiError(MidiErrorKind::kTruncated, "unexpected end of file");
  return b[pos];
}

uint32_t u32_be(const std::vector<uint8_t>& b, size_t pos) {
  if (pos + 4 > b.size())
    throw MidiError(MidiErrorKind::kTruncated, "unexpected end of file");
  return (static_cast<uint32_t>(b[pos]) << 24) |
         (static_cast<uint32_t>(b[pos + 1]) << 16) |
         (static_cast<uint32_t>(b[pos + 2]) << 8) | b[pos + 3];
}

uint16_t u16_be(const std::vector<uint8_t>& b, size_t pos) {
  if (pos + 2 > b.size())
    throw MidiError(MidiErrorKind::kTruncated, "unexpected end of file");
  return static_cast<uint16_t>((b[pos] << 8) | b[pos + 1]);
}

void push_u32_be(uint32_t v, std::vector<uint8_t>& out) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void push_u16_be(uint16_t v, std::vector<uint8_t>& out) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

// Seconds for absolute ticks, given the merged, tick-sorted tempo map.
struct TempoMap {
  // (tick, tempo). Implicit (0, kDefaultTempo) before the first entry.
  std::vector<std::pair<int64_t, uint32_t>> changes;

  void assign_seconds(std::vector<MidiEvent>& events, int tpq) const {
    double denom = static_cast<double>(tpq) * 1e6;
    for (auto& ev : events) {
      int64_t seg_tick = 0;
      uint32_t tempo = kDefaultTempo;
      double seconds = 0.0;
      for (const auto& [ct, cu] : changes) {
        if (ct >= ev.tick) break;
        seconds +=
            static_cast<double>(ct - seg_tick) * static_cast<double>(tempo) /
            denom;
        seg_tick = ct;
        tempo = cu;
      }
      ev.seconds = seconds + static_cast<double>(ev.tick - seg_tick) *
                                 static_cast<double>(tempo) / denom;
    }
  }
};

}  // namespace

std::pair<uint32_t, size_t> read_vlq(const std::vector<uint8_t>& bytes,
                                     size_t pos) {
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    uint8_t byte = u8_at(bytes, pos + i);
    value = (value << 7) | (byte & 0x7F);
    if ((byte & 0x80) == 0) return {value, pos + i + 1};
  }
  throw MidiError(MidiErrorKind::kUnterminatedVlq,
                  "variable-length quantity exceeds 4 bytes");
}

void write_vlq(uint32_t value, std::vector<uint8_t>& out) {
  uint8_t stack[5];
  int n = 0;
  stack[n++] = static_cast<uint8_t>(value & 0x7F);
  value >>= 7;
  while (value != 0) {
    stack[n++] = static_cast<uint8_t>((value & 0x7F) | 0x80);
    value >>= 7;
  }
  while (n > 0) out.push_back(stack[--n]);
}

SmfFile parse_smf(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), "MThd", 4) != 0)
    throw MidiError(MidiErrorKind::kBadHeader, "missing MThd chunk");
  uint32_t header_len = u32_be(bytes, 4);
  if (header_len < 6)
    throw MidiError(MidiErrorKind::kBadHeader, "MThd too short");
  uint16_t format = u16_be(bytes, 8);
  uint16_t ntrks = u16_be(bytes, 10);
  uint16_t division = u16_be(bytes, 12);
  if (format > 1)
    throw MidiError(MidiErrorKind::kUnsupportedFormat,
                    "only SMF formats 0 and 1 are supported");
  if (division & 0x8000)
    throw MidiError(MidiErrorKind::kUnsupportedFormat,
                    "SMPTE time division is not supported");
  if (division == 0)
    throw MidiError(MidiErrorKind::kBadHeader, "zero ticks per quarter");

  SmfFile file;
  file.format = format;
  file.ticks_per_quarter = division;

  size_t pos = 8 + header_len;
  for (int t = 0; t < ntrks; ++t) {
    if (pos + 8 > bytes.size())
      throw MidiError(MidiErrorKind::kTruncated, "missing MTrk chunk");
    if (std::memcmp(bytes.data() + pos, "MTrk", 4) != 0)
      throw MidiError(MidiErrorKind::kBadHeader, "expected MTrk chunk");
    uint32_t track_len = u32_be(bytes, pos + 4);
    size_t track_begin = pos + 8;
    size_t track_end = track_begin + track_len;
    if (track_end > bytes.size())
      throw MidiError(MidiErrorKind::kTruncated, "track length exceeds file");

    std::vector<MidiEvent> events;
    size_t p = track_begin;
    int64_t tick = 0;
    int running_status = -1;
    bool ended = false;
    while (p < track_end && !ended) {
      auto [delta, next] = read_vlq(bytes, p);
      p = next;
      tick += delta;

      uint8_t first = u8_at(bytes, p);
      int status;
      if (first & 0x80) {
        status = first;
        ++p;
      } else {
        if (running_status < 0)
          throw MidiError(MidiErrorKind::kBadHeader,
                          "data byte without running status");
        status = running_status;
      }

      MidiEvent ev;
      ev.tick = tick;
      if (status < 0xF0) {
        running_status = status;
        uint8_t type = status & 0xF0;
        ev.channel = status & 0x0F;
        uint8_t d1 = u8_at(bytes, p++) & 0x7F;
        uint8_t d2 = 0;
        if (type != 0xC0 && type != 0xD0) d2 = u8_at(bytes, p++) & 0x7F;
        ev.data1 = d1;
        ev.data2 = d2;
        switch (type) {
          case 0x90:
            ev.kind = d2 == 0 ? MidiEventKind::kNoteOff
                              : MidiEventKind::kNoteOn;
            events.push_back(ev);
            break;
          case 0x80:
            ev.kind = MidiEventKind::kNoteOff;
            events.push_back(ev);
            break;
          case 0xB0:
            ev.kind = MidiEventKind::kControlChange;
            events.push_back(ev);
            break;
          default:
            break;  // aftertouch, program, pitch bend: skipped
        }
      } else if (status == 0xFF) {
        running_status = -1;
        uint8_t meta_type = u8_at(bytes, p++);
        auto [len, after] = read_vlq(bytes, p);
        p = after;
        if (p + len > track_end)
          throw MidiError(MidiErrorKind::kTruncated, "meta event truncated");
        if (meta_type == 0x51 && len == 3) {
          ev.kind = MidiEventKind::kTempoMeta;
          ev.tempo_us_per_quarter = (static_cast<uint32_t>(bytes[p]) << 16) |
                                    (static_cast<uint32_t>(bytes[p + 1]) << 8) |
                                    bytes[p + 2];
          if (ev.tempo_us_per_quarter == 0)
            throw MidiError(MidiErrorKind::kBadHeader, "zero tempo");
          events.push_back(ev);
        } else if (meta_type == 0x2F) {
          ev.kind = MidiEventKind::kEndOfTrack;
          events.push_back(ev);
          ended = true;
        }
        p += len;
      } else if (status == 0xF0 || status == 0xF7) {
        running_status = -1;
        auto [len, after] = read_vlq(bytes, p);
        p = after;
        if (p + len > track_end)
          throw MidiError(MidiErrorKind::kTruncated, "sysex truncated");
        p += len;
      } else {
        throw MidiError(MidiErrorKind::kBadHeader,
                        "unsupported system realtime status in file");
      }
    }
    if (!ended)
      file.warnings.push_back("track " + std::to_string(t) +
                              ": missing EndOfTrack");
    file.tracks.push_back(std::move(events));
    pos = track_end;
  }

  // Merge tempo changes from every track, then assign seconds.
  TempoMap map;
  for (const auto& track : file.tracks)
    for (const auto& ev : track)
      if (ev.kind == MidiEventKind::kTempoMeta)
        map.changes.emplace_back(ev.tick, ev.tempo_us_per_quarter);
  std::stable_sort(map.changes.begin(), map.changes.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& track : file.tracks)
    map.assign_seconds(track, file.ticks_per_quarter);
  return file;
}

std::vector<uint8_t> write_smf(const SmfFile& file) {
  std::vector<uint8_t> out;
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  push_u32_be(6, out);
  push_u16_be(static_cast<uint16_t>(file.format), out);
  push_u16_be(static_cast<uint16_t>(file.tracks.size()), out);
  push_u16_be(static_cast<uint16_t>(file.ticks_per_quarter), out);

  for (const auto& track : file.tracks) {
    std::vector<MidiEvent> events = track;
    std::stable_sort(events.begin(), events.end(),
                     [](const MidiEvent& a, const MidiEvent& b) {
                       return a.tick < b.tick;
                     });

    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    size_t len_pos = out.size();
    push_u32_be(0, out);
    size_t body_begin = out.size();

    int64_t tick = 0;
    bool wrote_eot = false;
    for (const auto& ev : events) {
      if (ev.kind == MidiEventKind::kOtherIgnored) continue;
      write_vlq(static_cast<uint32_t>(ev.tick - tick), out);
      tick = ev.tick;
      switch (ev.kind) {
        case MidiEventKind::kNoteOn:
          out.push_back(static_cast<uint8_t>(0x90 | ev.channel));
          out.push_back(ev.data1);
          out.push_back(ev.data2);
          break;
        case MidiEventKind::kNoteOff:
          out.push_back(static_cast<uint8_t>(0x80 | ev.channel));
          out.push_back(ev.data1);
          out.push_back(ev.data2);
          break;
        case MidiEventKind::kControlChange:
          out.push_back(static_cast<uint8_t>(0xB0 | ev.channel));
          out.push_back(ev.data1);
          out.push_back(ev.data2);
          break;
        case MidiEventKind::kTempoMeta:
          out.insert(out.end(), {0xFF, 0x51, 0x03});
          out.push_back(static_cast<uint8_t>(ev.tempo_us_per_quarter >> 16));
          out.push_back(static_cast<uint8_t>(ev.tempo_us_per_quarter >> 8));
          out.push_back(static_cast<uint8_t>(ev.tempo_us_per_quarter));
          break;
        case MidiEventKind::kEndOfTrack:
          out.insert(out.end(), {0xFF, 0x2F, 0x00});
          wrote_eot = true;
          break;
        default:
          break;
      }
      if (wrote_eot) break;
    }
    if (!wrote_eot) {
      write_vlq(0, out);
      out.insert(out.end(), {0xFF, 0x2F, 0x00});
    }

    uint32_t body_len = static_cast<uint32_t>(out.size() - body_begin);
    out[len_pos] = static_cast<uint8_t>(body_len >> 24);
    out[len_pos + 1] = static_cast<uint8_t>(body_len >> 16);
    out[len_pos + 2] = static_cast<uint8_t>(body_len >> 8);
    out[len_pos + 3] = static_cast<uint8_t>(body_len);
  }
  return out;
}

std::vector<MidiEvent> merge_tracks(const SmfFile& file) {
  std::vector<MidiEvent> merged;
  for (const auto& track : file.tracks)
    merged.insert(merged.end(), track.begin(), track.end());
  std::stable_sort(merged.begin(), merged.end(),
                   [](const MidiEvent& a, const MidiEvent& b) {
                     return a.tick < b.tick;
                   });
  return merged;
}

}  // namespace pianomt
