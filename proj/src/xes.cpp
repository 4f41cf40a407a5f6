#include "pripel/xes.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include "pripel/errors.hpp"
#include "pripel/timefmt.hpp"

namespace pripel {

namespace {

constexpr std::string_view kActivityKey = "concept:name";
constexpr std::string_view kTimestampKey = "time:timestamp";

struct RawAttribute {
  std::string key;
  AttributeKind kind;
  std::string value;
  std::size_t line;
  std::size_t column;
};

struct RawEvent {
  std::optional<std::string> activity;
  std::optional<std::string> timestamp;
  std::vector<RawAttribute> attributes;
  std::size_t line;
  std::size_t column;
};

struct RawTrace {
  std::optional<std::string> case_id;
  std::vector<RawEvent> events;
  std::size_t line;
};

bool is_attribute_tag(std::string_view tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" || tag == "boolean" || tag == "id" ||
         tag == "list" || tag == "container";
}

class Handler {
 public:
  explicit Handler(XML_Parser parser) : parser_(parser) {}

  static void on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<Handler*>(self)->start(name, attrs);
  }
  static void on_end(void* self, const XML_Char* name) { static_cast<Handler*>(self)->end(name); }

  std::vector<RawTrace> traces;
  std::optional<ParseError> error;
  bool saw_log = false;

 private:
  std::size_t line() const { return XML_GetCurrentLineNumber(parser_); }
  std::size_t column() const { return XML_GetCurrentColumnNumber(parser_) + 1; }

  void fail(const std::string& what) {
    if (!error) error.emplace(what, line(), column());
    XML_StopParser(parser_, XML_FALSE);
  }

  void start(std::string_view tag, const XML_Char** attrs) {
    std::string_view parent = stack_.empty() ? std::string_view{} : std::string_view{stack_.back()};
    stack_.emplace_back(tag);
    if (stack_.size() == 1) {
      if (tag != "log") return fail("root element must be <log>, found <" + std::string(tag) + ">");
      saw_log = true;
      return;
    }
    if (tag == "trace" && parent == "log" && stack_.size() == 2) {
      traces.push_back(RawTrace{std::nullopt, {}, line()});
      return;
    }
    if (tag == "event" && parent == "trace" && stack_.size() == 3) {
      traces.back().events.push_back(RawEvent{std::nullopt, std::nullopt, {}, line(), column()});
      return;
    }
    if (!is_attribute_tag(tag) || (parent != "trace" && parent != "event")) return;
    if (parent == "trace" && stack_.size() != 3) return;
    if (parent == "event" && stack_.size() != 4) return;

    std::optional<std::string> key, value;
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      std::string_view k = attrs[i];
      if (k == "key") key = attrs[i + 1];
      if (k == "value") value = attrs[i + 1];
    }
    if (!key) return fail("<" + std::string(tag) + "> attribute without key");
    if (tag == "list" || tag == "container" || tag == "id") return;
    if (!value) return fail("attribute '" + *key + "' without value");

    if (parent == "trace") {
      if (*key == kActivityKey) traces.back().case_id = *value;
      return;
    }
    RawEvent& event = traces.back().events.back();
    if (*key == kActivityKey) {
      event.activity = *value;
    } else if (*key == kTimestampKey) {
      event.timestamp = *value;
    } else if (tag == "string") {
      event.attributes.push_back({*key, AttributeKind::Categorical, *value, line(), column()});
    } else if (tag == "int" || tag == "float") {
      event.attributes.push_back({*key, AttributeKind::Numeric, *value, line(), column()});
    } else if (tag == "boolean") {
      event.attributes.push_back({*key, AttributeKind::Boolean, *value, line(), column()});
    }
  }

  void end(std::string_view) { stack_.pop_back(); }

  XML_Parser parser_;
  std::vector<std::string> stack_;
};

std::vector<RawTrace> read_raw(std::istream& in) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                       &XML_ParserFree);
  if (!parser) throw Error("cannot allocate XML parser");
  Handler handler(parser.get());
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), &Handler::on_start, &Handler::on_end);

  std::vector<char> buffer(1 << 16);
  bool done = false;
  while (!done) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    auto got = in.gcount();
    done = got < static_cast<std::streamsize>(buffer.size());
    if (XML_Parse(parser.get(), buffer.data(), static_cast<int>(got), done) == XML_STATUS_ERROR) {
      if (handler.error) throw *handler.error;
      throw ParseError(XML_ErrorString(XML_GetErrorCode(parser.get())), XML_GetCurrentLineNumber(parser.get()),
                       XML_GetCurrentColumnNumber(parser.get()) + 1);
    }
  }
  if (handler.error) throw *handler.error;
  if (!handler.saw_log) throw ParseError("document has no <log> element", 1, 1);
  return std::move(handler.traces);
}

AttributeValue convert(const RawAttribute& raw) {
  auto bad = [&](const char* what) {
    return ParseError("attribute '" + raw.key + "': invalid " + what + " '" + raw.value + "'", raw.line, raw.column);
  };
  switch (raw.kind) {
    case AttributeKind::Numeric: {
      double x = 0.0;
      const char* first = raw.value.data();
      const char* last = first + raw.value.size();
      if (first != last && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, x);
      if (ec != std::errc{} || ptr != last) throw bad("number");
      return x;
    }
    case AttributeKind::Boolean: {
      std::string lower = raw.value;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      if (lower == "true" || lower == "1") return true;
      if (lower == "false" || lower == "0") return false;
      throw bad("boolean");
    }
    case AttributeKind::Categorical:
      return raw.value;
  }
  return Missing{};
}

}  // namespace

EventLog parse_xes(std::istream& in, const AttributeSchema& declared) {
  std::vector<RawTrace> raw = read_raw(in);

  AttributeSchema schema = declared;
  std::map<std::string, AttributeKind> seen_kind;
  std::map<std::string, std::pair<double, double>> observed_range;
  std::map<std::string, std::set<std::string>> observed_categories;

  std::vector<Trace> traces;
  traces.reserve(raw.size());
  for (auto& rt : raw) {
    if (!rt.case_id) throw SchemaError("trace starting at line " + std::to_string(rt.line) + " has no concept:name");
    Trace trace{*rt.case_id, {}};
    for (auto& re : rt.events) {
      if (!re.activity) throw SchemaError("trace '" + trace.case_id + "' has an event without concept:name");
      if (!re.timestamp) throw SchemaError("trace '" + trace.case_id + "' has an event without time:timestamp");
      auto ts = parse_timestamp(*re.timestamp);
      if (!ts) throw ParseError("invalid timestamp '" + *re.timestamp + "'", re.line, re.column);
      Event event{*re.activity, *ts, {}};
      for (const auto& attr : re.attributes) {
        auto [it, inserted] = seen_kind.emplace(attr.key, attr.kind);
        auto declared_it = declared.find(attr.key);
        AttributeKind expected = declared_it != declared.end() ? declared_it->second.kind : it->second;
        if (attr.kind != expected) {
          throw SchemaError("attribute '" + attr.key + "' in trace '" + trace.case_id + "' is " +
                            to_string(attr.kind) + " but was " + to_string(expected) + " before");
        }
        AttributeValue value = convert(attr);
        if (auto* x = std::get_if<double>(&value)) {
          auto [range, fresh] = observed_range.emplace(attr.key, std::pair{*x, *x});
          range->second.first = std::min(range->second.first, *x);
          range->second.second = std::max(range->second.second, *x);
        } else if (auto* s = std::get_if<std::string>(&value)) {
          observed_categories[attr.key].insert(*s);
        }
        event.payload[attr.key] = std::move(value);
      }
      trace.events.push_back(std::move(event));
    }
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) { return a.ts < b.ts; });
    traces.push_back(std::move(trace));
  }

  for (const auto& [key, kind] : seen_kind) {
    if (declared.count(key)) continue;
    AttributeSpec spec;
    spec.kind = kind;
    if (kind == AttributeKind::Numeric) {
      auto [lo, hi] = observed_range.at(key);
      if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
      }
      spec.min = lo;
      spec.max = hi;
    } else if (kind == AttributeKind::Categorical) {
      const auto& cats = observed_categories.at(key);
      spec.categories.assign(cats.begin(), cats.end());
    }
    schema.emplace(key, std::move(spec));
  }
  return EventLog(std::move(traces), std::move(schema));
}

EventLog parse_xes(std::string_view text, const AttributeSchema& declared) {
  std::istringstream in{std::string(text)};
  return parse_xes(in, declared);
}

EventLog read_xes_file(const std::filesystem::path& path, const AttributeSchema& declared) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return parse_xes(in, declared);
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void write_attribute(std::ostream& out, const char* indent, const std::string& key, const AttributeValue& value) {
  if (const auto* x = std::get_if<double>(&value)) {
    out << indent << "<float key=\"" << escape(key) << "\" value=\"" << format_double(*x) << "\"/>\n";
  } else if (const auto* s = std::get_if<std::string>(&value)) {
    out << indent << "<string key=\"" << escape(key) << "\" value=\"" << escape(*s) << "\"/>\n";
  } else if (const auto* b = std::get_if<bool>(&value)) {
    out << indent << "<boolean key=\"" << escape(key) << "\" value=\"" << (*b ? "true" : "false") << "\"/>\n";
  }
}

}  // namespace

void write_xes(std::ostream& out, const EventLog& log) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<log xes.version=\"2.0\" xes.features=\"\" xmlns=\"http://www.xes-standard.org/\">\n"
         "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
         "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
  for (const auto& trace : log.traces()) {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << escape(trace.case_id) << "\"/>\n";
    for (const auto& event : trace.events) {
      out << "    <event>\n";
      out << "      <string key=\"concept:name\" value=\"" << escape(event.activity) << "\"/>\n";
      out << "      <date key=\"time:timestamp\" value=\"" << format_timestamp(event.ts) << "\"/>\n";
      for (const auto& [key, value] : event.payload) write_attribute(out, "      ", key, value);
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
}

std::string write_xes(const EventLog& log) {
  std::ostringstream out;
  write_xes(out, log);
  return std::move(out).str();
}

void write_xes_file(const std::filesystem::path& path, const EventLog& log) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_xes(out, log);
  if (!out.flush()) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace pripel
