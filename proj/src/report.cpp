#include "fuzzyrec/report.hpp"

#include <algorithm>
#include <vector>

#include "fuzzyrec/alignment.hpp"
#include "fuzzyrec/errors.hpp"

namespace fuzzyrec {

QuintileColumn to_quintiles(const FuzzySegment& seg) {
  if (seg.options.empty())
    throw DataError("cannot apportion a segment without options");

  std::vector<std::pair<std::string, int>> opts(seg.options.begin(),
                                                seg.options.end());
  std::sort(opts.begin(), opts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  int total = 0;
  for (const auto& [label, count] : opts) {
    if (count < 1) throw DataError("segment option with non-positive count");
    total += count;
  }

  std::vector<int> quota(opts.size());
  std::vector<int> remainder(opts.size());
  int assigned = 0;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    quota[i] = opts[i].second * 5 / total;
    remainder[i] = opts[i].second * 5 % total;
    assigned += quota[i];
  }

  std::vector<std::size_t> award(opts.size());
  for (std::size_t i = 0; i < award.size(); ++i) award[i] = i;
  std::sort(award.begin(), award.end(), [&](std::size_t a, std::size_t b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return opts[a].first < opts[b].first;
  });
  for (std::size_t i = 0; assigned < 5; ++i, ++assigned)
    quota[award[i]] += 1;

  QuintileColumn column;
  std::size_t cell = 0;
  for (std::size_t i = 0; i < opts.size(); ++i)
    for (int k = 0; k < quota[i]; ++k) column[cell++] = opts[i].first;
  return column;
}

std::string html_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

void append_alignment_table(std::string& html, const CognateSet& set,
                            const std::string& proto_doculect) {
  Alignment alignment;
  try {
    alignment = align_cognate_set(set, set.proto.has_value());
  } catch (const DataError&) {
    return;
  }
  html += "<table class=\"alignment\">\n";
  for (std::size_t r = 0; r < alignment.rows.size(); ++r) {
    const bool is_proto = alignment.doculects[r] == proto_doculect;
    html += is_proto ? "<tr class=\"proto\">" : "<tr>";
    html += "<th>" + html_escape(alignment.doculects[r]) + "</th>";
    for (const Token& token : alignment.rows[r])
      html += "<td>" + html_escape(token) + "</td>";
    html += "</tr>\n";
  }
  html += "</table>\n";
}

}  // namespace

std::string emit_report(const Wordlist& wl,
                        std::span<const FuzzyReconstruction> frs,
                        const std::string& title) {
  int certain = 0;
  for (const FuzzyReconstruction& fr : frs)
    if (fr.certain) ++certain;
  const int uncertain = static_cast<int>(frs.size()) - certain;

  std::string html;
  html += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n";
  html += "<meta charset=\"utf-8\">\n";
  html += "<title>" + html_escape(title) + "</title>\n";
  html +=
      "<style>\n"
      "body{font-family:system-ui,sans-serif;margin:2rem;color:#222;"
      "background:#fff;}\n"
      "h1{font-size:1.4rem;}\n"
      "h2{font-size:1.05rem;margin:0 0 .4rem 0;}\n"
      "section{margin-bottom:1.6rem;border-bottom:1px solid #ddd;"
      "padding-bottom:1rem;}\n"
      "table{border-collapse:collapse;margin:.4rem 0;}\n"
      "td,th{border:1px solid #999;padding:2px 9px;text-align:center;"
      "font-weight:normal;}\n"
      "th{text-align:left;background:#efefef;}\n"
      "tr.proto td{background:#fdf3d7;font-style:italic;}\n"
      "p.summary code{background:#f4f4f4;padding:1px 5px;}\n"
      "span.flag{color:#b00020;font-weight:600;}\n"
      "table.quintiles td{min-width:2.2em;border-color:#bbb;}\n"
      "td.uncertain{background:#ffd6d6;}\n"
      "</style>\n</head>\n<body>\n";
  html += "<h1>" + html_escape(title) + "</h1>\n";
  html += "<p>" + std::to_string(frs.size()) + " cognate sets, " +
          std::to_string(certain) + " certain, " + std::to_string(uncertain) +
          " uncertain.</p>\n";

  if (frs.empty()) {
    html += "<p>No reconstructions to display.</p>\n";
    html += "</body>\n</html>\n";
    return html;
  }

  for (const FuzzyReconstruction& fr : frs) {
    html += "<section>\n";
    html += "<h2>Set " + html_escape(fr.cogid);
    if (!fr.gloss.empty()) html += " (" + html_escape(fr.gloss) + ")";
    html += "</h2>\n";

    const CognateSet* set = wl.find(fr.cogid);
    if (set && wl.proto_doculect)
      append_alignment_table(html, *set, *wl.proto_doculect);
    else if (set)
      append_alignment_table(html, *set, "");

    html += "<p class=\"summary\">Summary: <code>" +
            html_escape(render_fuzzy(fr)) + "</code>";
    if (!fr.certain) html += " <span class=\"flag\">uncertain</span>";
    html += "</p>\n";

    std::vector<QuintileColumn> grid;
    grid.reserve(fr.segments.size());
    for (const FuzzySegment& seg : fr.segments)
      grid.push_back(to_quintiles(seg));
    html += "<table class=\"quintiles\">\n";
    for (std::size_t row = 0; row < 5; ++row) {
      html += "<tr>";
      for (std::size_t col = 0; col < grid.size(); ++col) {
        const bool flagged = fr.segments[col].options.size() > 1;
        html += flagged ? "<td class=\"uncertain\">" : "<td>";
        html += html_escape(grid[col][row]);
        html += "</td>";
      }
      html += "</tr>\n";
    }
    html += "</table>\n</section>\n";
  }

  html += "</body>\n</html>\n";
  return html;
}

}  // namespace fuzzyrec
