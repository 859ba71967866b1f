#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "qap/model.hpp"

namespace qap {

// Canonical dialogue JSONL: one utterance per line with fields
// dialogue_id, turn_index, speaker, text, interrupted (default false),
// language (default "en"). Dialogues come back sorted by dialogue_id.
//
// Throws MalformedLine, DuplicateTurn, NonDenseTurns.
std::vector<Dialogue> parse_dialogue_jsonl(std::istream& in);
void write_dialogue_jsonl(std::ostream& out, const std::vector<Dialogue>& dialogues);

struct TranscriptOptions {
  std::string dialogue_id;
  std::string language = "en";
  std::string interruption_marker = "--";
};

// Line-numbered transcript: `line_no <TAB> speaker <TAB> text`. A text ending
// in the interruption marker is flagged interrupted and the marker removed.
// Blank lines are skipped; line numbers must increase.
//
// Throws MalformedLine, EmptyTranscript.
std::vector<Dialogue> parse_tsv_transcript(std::istream& in, const TranscriptOptions& options);

// ELAN .eaf adapter: collects time-aligned annotations from every tier into
// one dialogue ordered by start time. Speaker is the tier's PARTICIPANT, or
// its TIER_ID when absent. Dependent (reference) tiers are ignored.
std::vector<Dialogue> parse_eaf(std::istream& in, const TranscriptOptions& options);

// Annotation JSONL, one record per line discriminated by "kind" ("q"|"a").
// Throws MalformedLine, UnknownTag.
AnnotationSet read_annotations(std::istream& in);
// Writes all questions, then all answers, in the order given.
void write_annotations(std::ostream& out, const AnnotationSet& set);

struct DatasetSplit {
  std::vector<Dialogue> gold;
  std::vector<Dialogue> test;
};

// The first `gold_utterances` utterances in (dialogue_id, turn_index) order
// form the gold portion; a dialogue straddling the boundary is cut in two.
DatasetSplit split_by_utterance_count(const std::vector<Dialogue>& dialogues, std::size_t gold_utterances);
DatasetSplit split_by_dialogue_ids(const std::vector<Dialogue>& dialogues, const std::set<std::string>& gold_ids);

}  // namespace qap
