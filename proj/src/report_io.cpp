#include "kop/report_io.hpp"

#include <sstream>

#include <json.hpp>

namespace kop {

namespace {

std::string point_text(Point p, const System* sys) {
  std::ostringstream os;
  os << "(" << p.run << "," << p.time << ")";
  if (sys && p.run >= 0 && p.run < sys->run_count() &&
      !sys->run(p.run).label.empty())
    os << " [" << sys->run(p.run).label << "]";
  return os.str();
}

void item_lines(std::ostringstream& os, const std::string& heading,
                const std::vector<CheckItem>& items, const System* sys) {
  for (const CheckItem& item : items) {
    os << heading << " " << item.name << ": "
       << (item.holds ? "holds" : "FAILS");
    if (item.witness) os << " at " << point_text(*item.witness, sys);
    os << "\n";
  }
}

} // namespace

std::string render_report_text(const VerificationReport& report,
                               const System* sys) {
  std::ostringstream os;
  os << "theorem: " << theorem_tag_name(report.theorem) << "\n";
  item_lines(os, "hypothesis", report.hypotheses, sys);
  if (report.conclusionHolds.has_value())
    os << "conclusion: " << (*report.conclusionHolds ? "holds" : "FAILS") << "\n";
  else
    os << "conclusion: not asserted\n";
  item_lines(os, "subcheck", report.subchecks, sys);
  if (!report.counterexamples.empty()) {
    os << "counterexamples:";
    for (Point p : report.counterexamples) os << " " << point_text(p, sys);
    os << "\n";
  }
  if (!report.note.empty()) os << "note: " << report.note << "\n";
  return os.str();
}

namespace {

nlohmann::json items_json(const std::vector<CheckItem>& items) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckItem& item : items) {
    nlohmann::json j{{"name", item.name}, {"holds", item.holds}};
    if (item.witness)
      j["witness"] = {{"run", item.witness->run}, {"time", item.witness->time}};
    arr.push_back(std::move(j));
  }
  return arr;
}

} // namespace

std::string render_report_json(const VerificationReport& report) {
  nlohmann::json j;
  j["theorem"] = theorem_tag_name(report.theorem);
  j["hypotheses"] = items_json(report.hypotheses);
  if (report.conclusionHolds.has_value())
    j["conclusionHolds"] = *report.conclusionHolds;
  else
    j["conclusionHolds"] = nullptr;
  j["subchecks"] = items_json(report.subchecks);
  nlohmann::json cxs = nlohmann::json::array();
  for (Point p : report.counterexamples)
    cxs.push_back({{"run", p.run}, {"time", p.time}});
  j["counterexamples"] = std::move(cxs);
  j["note"] = report.note;
  return j.dump(2) + "\n";
}

} // namespace kop
