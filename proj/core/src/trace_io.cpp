#include "hymlab/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "hymlab/svg.hpp"

namespace hymlab {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ojson record_json(const MonitorRecord& r) {
  ojson o;
  o["t"] = r.t;
  o["hatL"] = r.hatL;
  o["hatU"] = r.hatU;
  o["mL"] = r.mL;
  o["mU"] = r.mU;
  o["hatLk"] = r.hatLk;
  o["hatUk"] = r.hatUk;
  o["mLk"] = r.mLk;
  o["mUk"] = r.mUk;
  o["phi_norm_sq"] = r.phi_norm_sq;
  o["phi_sup_sq"] = r.phi_sup_sq;
  o["theta_sup_sq"] = r.theta_sup_sq;
  o["grad_energy"] = r.grad_energy;
  o["hn_dist"] = r.hn_dist;
  o["eig_variance"] = r.eig_variance;
  o["det_drift"] = r.det_drift;
  o["trF_drift"] = r.trF_drift;
  o["hym"] = r.hym;
  return o;
}

std::vector<double> column(const FlowTrace& trace,
                           double MonitorRecord::* field) {
  std::vector<double> v;
  v.reserve(trace.samples.size());
  for (const auto& rec : trace.samples) v.push_back(rec.*field);
  return v;
}

}  // namespace

std::string trace_jsonl(const FlowTrace& trace) {
  std::string out;
  for (const auto& rec : trace.samples) {
    out += record_json(rec).dump();
    out += '\n';
  }
  return out;
}

std::string trace_csv(const FlowTrace& trace) {
  std::string out = "t,hatL,hatU,mL,mU";
  const std::size_t r = trace.samples.empty() ? 0 : trace.samples[0].hatLk.size();
  const std::size_t m = trace.samples.empty() ? 0 : trace.samples[0].hym.size();
  for (const char* name : {"hatLk", "hatUk", "mLk", "mUk"})
    for (std::size_t k = 1; k <= r; ++k)
      out += "," + std::string(name) + std::to_string(k);
  out +=
      ",phi_norm_sq,phi_sup_sq,theta_sup_sq,grad_energy,hn_dist,eig_variance,"
      "det_drift,trF_drift";
  for (std::size_t k = 1; k <= m; ++k) out += ",hym" + std::to_string(k);
  out += '\n';

  for (const auto& rec : trace.samples) {
    out += num(rec.t) + "," + num(rec.hatL) + "," + num(rec.hatU) + "," +
           num(rec.mL) + "," + num(rec.mU);
    for (const auto* vec : {&rec.hatLk, &rec.hatUk, &rec.mLk, &rec.mUk})
      for (double v : *vec) out += "," + num(v);
    out += "," + num(rec.phi_norm_sq) + "," + num(rec.phi_sup_sq) + "," +
           num(rec.theta_sup_sq) + "," + num(rec.grad_energy) + "," +
           num(rec.hn_dist) + "," + num(rec.eig_variance) + "," +
           num(rec.det_drift) + "," + num(rec.trF_drift);
    for (double v : rec.hym) out += "," + num(v);
    out += '\n';
  }
  return out;
}

std::string pair_csv(const std::vector<double>& t,
                     const std::vector<PairDistance>& rows) {
  if (t.size() != rows.size())
    throw ValidationError("pair_csv: time and row counts differ");
  std::string out = "t,theta_L2,eig_L2,cond_bound,cross_penalty\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out += num(t[i]) + "," + num(rows[i].theta_L2) + "," +
           num(rows[i].eig_L2) + "," + num(rows[i].cond_bound) + "," +
           num(rows[i].cross_penalty) + '\n';
  return out;
}

std::vector<SvgGroup> trace_svgs(const FlowTrace& trace) {
  std::vector<double> t = column(trace, &MonitorRecord::t);

  auto scalar = [&](const char* label, double MonitorRecord::* field) {
    return SvgSeries{label, t, column(trace, field)};
  };

  std::vector<SvgGroup> out;
  out.push_back({"envelopes",
                 svg_line_plot("eigenvalue envelopes",
                               {scalar("hatL", &MonitorRecord::hatL),
                                scalar("hatU", &MonitorRecord::hatU),
                                scalar("mL", &MonitorRecord::mL),
                                scalar("mU", &MonitorRecord::mU)})});
  out.push_back({"norms",
                 svg_line_plot("curvature norms",
                               {scalar("phi_norm_sq", &MonitorRecord::phi_norm_sq),
                                scalar("phi_sup_sq", &MonitorRecord::phi_sup_sq),
                                scalar("theta_sup_sq", &MonitorRecord::theta_sup_sq),
                                scalar("grad_energy", &MonitorRecord::grad_energy)})});
  out.push_back({"distances",
                 svg_line_plot("distances and drifts",
                               {scalar("hn_dist", &MonitorRecord::hn_dist),
                                scalar("eig_variance", &MonitorRecord::eig_variance),
                                scalar("det_drift", &MonitorRecord::det_drift),
                                scalar("trF_drift", &MonitorRecord::trF_drift)})});

  std::vector<SvgSeries> hym_series;
  const std::size_t m = trace.samples.empty() ? 0 : trace.samples[0].hym.size();
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> y;
    y.reserve(trace.samples.size());
    for (const auto& rec : trace.samples) y.push_back(rec.hym[k]);
    hym_series.push_back({"hym" + std::to_string(k + 1), t, std::move(y)});
  }
  out.push_back({"hym", svg_line_plot("Yang-Mills type functionals", hym_series)});
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw ValidationError("short write on output file: " + path);
}

FlowTrace parse_trace_jsonl(const std::string& text) {
  FlowTrace trace;
  std::size_t pos = 0, lineno = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (line.empty()) continue;
    ojson o;
    try {
      o = ojson::parse(line);
      MonitorRecord rec;
      rec.t = o.at("t").get<double>();
      rec.hatL = o.at("hatL").get<double>();
      rec.hatU = o.at("hatU").get<double>();
      rec.mL = o.at("mL").get<double>();
      rec.mU = o.at("mU").get<double>();
      rec.hatLk = o.at("hatLk").get<std::vector<double>>();
      rec.hatUk = o.at("hatUk").get<std::vector<double>>();
      rec.mLk = o.at("mLk").get<std::vector<double>>();
      rec.mUk = o.at("mUk").get<std::vector<double>>();
      rec.phi_norm_sq = o.at("phi_norm_sq").get<double>();
      rec.phi_sup_sq = o.at("phi_sup_sq").get<double>();
      rec.theta_sup_sq = o.at("theta_sup_sq").get<double>();
      rec.grad_energy = o.at("grad_energy").get<double>();
      rec.hn_dist = o.at("hn_dist").get<double>();
      rec.eig_variance = o.at("eig_variance").get<double>();
      rec.det_drift = o.at("det_drift").get<double>();
      rec.trF_drift = o.at("trF_drift").get<double>();
      rec.hym = o.at("hym").get<std::vector<double>>();
      trace.samples.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("trace line " + std::to_string(lineno) + ": " +
                            e.what());
    }
  }
  return trace;
}

}  // namespace hymlab
