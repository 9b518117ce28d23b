#pragma once

// Grammar for the Entity attribute carried in the MISC column. A value is a
// concatenation of units:
//
//   single  "(" eid fields? ")"      open+close fused on one node
//   open    "(" eid fields?
//   close   eid ")"
//   eid     "e" digits
//   fields  "-" etype ("-" head ("-" other)?)?
//
// etype may not contain "-", "(" or ")"; head is digits; other may contain
// "-" but not parentheses. Empty trailing fields are dropped from the right.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefud/error.hpp"
#include "corefud/ids.hpp"
#include "corefud/strings.hpp"

namespace corefud {

// Field inventory announced once per file in a "# global.Entity = ..." line.
inline constexpr std::string_view kEntityFieldInventory = "eid-etype-head-other";

enum class EntityEventKind { open, close, single };

struct EntityEvent {
  EntityEventKind kind = EntityEventKind::single;
  std::string cluster_id;
  std::optional<std::string> etype;
  std::optional<int> head;
  std::optional<std::string> other;

  bool operator==(const EntityEvent&) const = default;
};

inline EntityEvent open_event(std::string cluster_id, std::optional<std::string> etype = {},
                              std::optional<int> head = {}, std::optional<std::string> other = {}) {
  return EntityEvent{EntityEventKind::open, std::move(cluster_id), std::move(etype), head,
                     std::move(other)};
}

inline EntityEvent close_event(std::string cluster_id) {
  return EntityEvent{EntityEventKind::close, std::move(cluster_id), {}, {}, {}};
}

inline EntityEvent single_event(std::string cluster_id, std::optional<std::string> etype = {},
                                std::optional<int> head = {},
                                std::optional<std::string> other = {}) {
  return EntityEvent{EntityEventKind::single, std::move(cluster_id), std::move(etype), head,
                     std::move(other)};
}

namespace detail {

// Scans "e<digits>" starting at pos; advances pos past it.
inline std::string scan_eid(std::string_view value, std::size_t& pos) {
  std::size_t start = pos;
  if (pos >= value.size() || value[pos] != 'e')
    fail(ErrorCode::MalformedEntity,
         "expected cluster id at offset " + std::to_string(pos) + " in '" + std::string(value) + "'");
  ++pos;
  std::size_t digits = pos;
  while (pos < value.size() && value[pos] >= '0' && value[pos] <= '9') ++pos;
  if (pos == digits || pos - digits > 12)
    fail(ErrorCode::MalformedEntity, "bad cluster id shape at offset " + std::to_string(start) +
                                         " in '" + std::string(value) + "'");
  return std::string(value.substr(start, pos - start));
}

}  // namespace detail

// Parses an Entity attribute payload into events in textual order. Never
// crashes on arbitrary input: returns events or throws Error(MalformedEntity).
inline std::vector<EntityEvent> parse_entity_attr(std::string_view value) {
  std::vector<EntityEvent> events;
  if (value.empty()) fail(ErrorCode::MalformedEntity, "empty Entity value");
  std::size_t pos = 0;
  while (pos < value.size()) {
    if (value[pos] == '(') {
      ++pos;
      EntityEvent ev;
      ev.cluster_id = detail::scan_eid(value, pos);
      // optional fields
      for (int field = 0; field < 3 && pos < value.size() && value[pos] == '-'; ++field) {
        ++pos;
        if (field == 0) {  // etype: up to '-', '(' or ')'
          std::size_t start = pos;
          while (pos < value.size() && value[pos] != '-' && value[pos] != '(' && value[pos] != ')')
            ++pos;
          if (pos == start) fail(ErrorCode::MalformedEntity, "empty etype field in '" + std::string(value) + "'");
          ev.etype = std::string(value.substr(start, pos - start));
        } else if (field == 1) {  // head: digits
          std::size_t start = pos;
          while (pos < value.size() && value[pos] >= '0' && value[pos] <= '9') ++pos;
          auto head = parse_digits(value.substr(start, pos - start), 9);
          if (!head || *head < 1)
            fail(ErrorCode::MalformedEntity, "bad head field in '" + std::string(value) + "'");
          if (pos < value.size() && value[pos] != '-' && value[pos] != '(' && value[pos] != ')')
            fail(ErrorCode::MalformedEntity, "bad head field in '" + std::string(value) + "'");
          ev.head = static_cast<int>(*head);
        } else {  // other: up to '(' or ')'
          std::size_t start = pos;
          while (pos < value.size() && value[pos] != '(' && value[pos] != ')') ++pos;
          if (pos == start) fail(ErrorCode::MalformedEntity, "empty other field in '" + std::string(value) + "'");
          ev.other = std::string(value.substr(start, pos - start));
        }
      }
      if (pos < value.size() && value[pos] == '-')
        fail(ErrorCode::MalformedEntity, "too many fields in '" + std::string(value) + "'");
      if (pos < value.size() && value[pos] == ')') {
        ++pos;
        ev.kind = EntityEventKind::single;
      } else {
        ev.kind = EntityEventKind::open;
      }
      events.push_back(std::move(ev));
    } else {
      EntityEvent ev = close_event(detail::scan_eid(value, pos));
      if (pos >= value.size() || value[pos] != ')')
        fail(ErrorCode::MalformedEntity, "unterminated close unit in '" + std::string(value) + "'");
      ++pos;
      events.push_back(std::move(ev));
    }
  }
  return events;
}

namespace detail {

inline void check_field_token(const std::string& value, bool allow_dash, std::string_view what) {
  if (value.empty()) fail(ErrorCode::MalformedEntity, std::string(what) + " field is empty");
  for (char c : value)
    if (c == '(' || c == ')' || (!allow_dash && c == '-'))
      fail(ErrorCode::MalformedEntity, std::string(what) + " field contains reserved character: '" + value + "'");
}

inline void append_unit(std::string& out, const EntityEvent& ev) {
  if (!cluster_id_well_formed(ev.cluster_id))
    fail(ErrorCode::MalformedEntity, "bad cluster id shape: '" + ev.cluster_id + "'");
  if (ev.kind == EntityEventKind::close) {
    if (ev.etype || ev.head || ev.other)
      fail(ErrorCode::MalformedEntity, "close event for " + ev.cluster_id + " carries fields");
    out += ev.cluster_id;
    out.push_back(')');
    return;
  }
  if (ev.other && !ev.head)
    fail(ErrorCode::MalformedEntity, "event with 'other' but no 'head' cannot be encoded");
  if (ev.head && !ev.etype)
    fail(ErrorCode::MalformedEntity, "event with 'head' but no 'etype' cannot be encoded");
  out.push_back('(');
  out += ev.cluster_id;
  if (ev.etype) {
    check_field_token(*ev.etype, false, "etype");
    out.push_back('-');
    out += *ev.etype;
  }
  if (ev.head) {
    if (*ev.head < 1) fail(ErrorCode::MalformedEntity, "head must be positive");
    out.push_back('-');
    out += std::to_string(*ev.head);
  }
  if (ev.other) {
    check_field_token(*ev.other, true, "other");
    out.push_back('-');
    out += *ev.other;
  }
  if (ev.kind == EntityEventKind::single) out.push_back(')');
}

}  // namespace detail

// Renders events back to the attribute payload. Requires the canonical kind
// order (closes, then opens, then singles); an empty list yields an empty
// string and the caller omits the attribute.
inline std::string serialize_entity_attr(const std::vector<EntityEvent>& events) {
  int phase = 0;  // 0 = closes, 1 = opens, 2 = singles
  for (const EntityEvent& ev : events) {
    int p = ev.kind == EntityEventKind::close ? 0 : ev.kind == EntityEventKind::open ? 1 : 2;
    if (p < phase)
      fail(ErrorCode::BadOrdering, "events must be ordered closes, opens, singles");
    phase = p;
  }
  std::string out;
  for (const EntityEvent& ev : events) detail::append_unit(out, ev);
  return out;
}

}  // namespace corefud
