#pragma once

#include <string>
#include <vector>

#include "hymlab/analytics.hpp"
#include "hymlab/flow.hpp"

namespace hymlab {

// JSON-lines serialization: one object per sample, keys matching the
// MonitorRecord field names, vector fields as arrays.  Identical traces
// serialize to identical bytes.
std::string trace_jsonl(const FlowTrace& trace);

// CSV with a header row; vector fields expand to suffixed columns
// (hatLk1..hatLkr and so on, hym1..hymM).  Values use round-trip precision.
std::string trace_csv(const FlowTrace& trace);

// CSV of pair-distance samples: t, theta_L2, eig_L2, cond_bound,
// cross_penalty.  Sizes of t and rows must agree.
std::string pair_csv(const std::vector<double>& t,
                     const std::vector<PairDistance>& rows);

// Inverse of trace_jsonl.  Every record must carry the full key schema;
// malformed lines raise ValidationError.
FlowTrace parse_trace_jsonl(const std::string& text);

struct SvgGroup {
  std::string name;  // file suffix: envelopes, norms, distances, hym
  std::string svg;
};

// One SVG per monitor group over the sampled time axis.
std::vector<SvgGroup> trace_svgs(const FlowTrace& trace);

// Whole-file write; throws ValidationError when the path cannot be opened.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hymlab
