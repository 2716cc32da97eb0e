#include "wmr/json_io.hpp"

namespace wmr {

Json to_json(const Rational& value) { return to_string(value); }

Json to_json(const NodeSet& set) { return set.members(); }

Json to_json(const MessageId& message) {
  return {{"sender", message.sender},
          {"team", to_json(message.team)},
          {"dest", message.dest},
          {"label", message.label()}};
}

Json to_json(const DimensionAudit& audit) {
  Json nodes = Json::array();
  for (const auto& n : audit.nodes) {
    nodes.push_back({{"node", n.node},
                     {"codewords", n.codewords},
                     {"signal_columns", n.signal_columns.str()},
                     {"interference_columns", n.interference_columns.str()},
                     {"dof", to_json(n.dof)},
                     {"dof_limit", to_json(n.dof_limit)}});
  }
  return {{"eta", audit.eta},
          {"gamma", audit.gamma},
          {"block_length", audit.block_length.str()},
          {"nodes", nodes},
          {"sum_dof", to_json(audit.sum_dof)},
          {"sum_dof_limit", to_json(audit.sum_dof_limit)}};
}

Json to_json(const RankCertificate& cert) {
  Json j = {{"label", cert.label},
            {"rows", cert.rows},
            {"cols", cert.cols},
            {"rank", cert.rank},
            {"mode", to_string(cert.mode)},
            {"verdict", cert.pass ? "pass" : "fail"}};
  if (cert.sigma_min) j["sigma_min"] = *cert.sigma_min;
  if (cert.sigma_max) j["sigma_max"] = *cert.sigma_max;
  if (cert.tolerance) j["tolerance"] = *cert.tolerance;
  if (cert.modulus) j["modulus"] = std::to_string(*cert.modulus);
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

Json to_json(const ContainmentReport& report) {
  return {{"precoder", to_json(report.precoder)},
          {"checked_columns", report.checked_columns},
          {"max_relative_residual", report.max_relative_residual},
          {"contained", report.contained}};
}

Json to_json(const RoundTripReport& report) {
  Json nodes = Json::array();
  for (const auto& n : report.nodes) {
    Json node = {{"node", n.node},
                 {"codewords", n.codewords},
                 {"max_abs_error", n.max_abs_error},
                 {"relative_error", n.relative_error},
                 {"mismatched_entries", n.mismatched_entries},
                 {"certificate", to_json(n.certificate)}};
    if (n.condition_number) node["condition_number"] = *n.condition_number;
    nodes.push_back(std::move(node));
  }
  Json j = {{"mode", to_string(report.mode)},
            {"distribution", report.distribution},
            {"codewords", report.codewords},
            {"decoded", report.decoded},
            {"nodes", nodes},
            {"max_relative_error", report.max_relative_error()}};
  if (report.refused) j["refused"] = to_json(*report.refused);
  return j;
}

Json to_json(const BoundCheck& check) {
  return {{"name", check.name},
          {"r", to_json(check.r)},
          {"lhs", to_json(check.lhs)},
          {"rhs", to_json(check.rhs)},
          {"relation", check.relation},
          {"pass", check.pass}};
}

Json to_json(const CorollaryReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  return {{"K", report.K}, {"checks", checks}, {"all_pass", report.all_pass()}};
}

Json to_json(const PlateauDiagnostic& diag) {
  return {{"i", diag.i},
          {"left", to_json(diag.left)},
          {"mid", to_json(diag.mid)},
          {"right", to_json(diag.right)},
          {"constant", diag.constant}};
}

Json to_json(const CutBound& cut) {
  Json j = {{"T", to_json(cut.T)}, {"R", to_json(cut.R)}, {"W_t", cut.W_t}, {"W_r", cut.W_r}};
  j["bound"] = cut.bound ? to_json(*cut.bound) : Json("none");
  return j;
}

Json to_json(const MassSolution& solution) {
  return {{"masses", solution.masses.b},
          {"objective", to_json(solution.objective)},
          {"N", solution.N},
          {"scale", solution.scale}};
}

Json to_json(const ConvexityReport& report) {
  Json per_t = Json::array();
  for (const auto& a : report.per_t) {
    Json D = Json::array();
    for (const auto& d : a.D) D.push_back(d.str());
    Json C = Json::array();
    for (const auto& c : a.C) C.push_back(to_json(c));
    per_t.push_back({{"t", a.t},
                     {"D", D},
                     {"C", C},
                     {"D_decreasing", a.D_decreasing},
                     {"D_convex", a.D_convex},
                     {"C_decreasing", a.C_decreasing},
                     {"C_convex", a.C_convex}});
  }
  return {{"K", report.K}, {"per_t", per_t}, {"all_pass", report.all_pass()}};
}

Json scheme_json(const SystemParams& params, int eta) {
  const auto messages = generate_messages(params);
  const auto assignment = assign_precoders(params);

  Json by_dest = Json::object();
  for (const auto& m : messages) by_dest[std::to_string(m.dest)].push_back(m.label());

  Json precoders = Json::array();
  for (const auto& [R, list] : assignment.lists()) {
    Json h = Json::array();
    for (const auto& [j, k] : channel_set_h(params, R)) h.push_back({j, k});
    Json labels = Json::array();
    for (const auto& m : list) labels.push_back(m.label());
    precoders.push_back({{"R", to_json(R)}, {"H", h}, {"codewords", labels}});
  }

  return {{"K", params.K()},
          {"r", params.r()},
          {"gamma", params.gamma()},
          {"codeword_count", messages.size()},
          {"messages", by_dest},
          {"precoders", precoders},
          {"dimension_audit", to_json(dimension_audit(params, eta))},
          {"sum_dof", to_json(sum_dof_closed_form(params))}};
}

}  // namespace wmr
