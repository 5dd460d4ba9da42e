/* vim: set sw=4 sts=4 et : */

#include <embedlab/run_log.hh>
#include <embedlab/errors.hh>

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

using nlohmann::json;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace embedlab
{
    BudgetSchedule::BudgetSchedule() :
        _name("id"),
        _fn([] (size_t s) { return static_cast<Budget>(s); })
    {
    }

    BudgetSchedule::BudgetSchedule(string name, std::function<Budget (size_t)> fn) :
        _name(std::move(name)),
        _fn(std::move(fn))
    {
    }

    auto parse_budget_schedule(string_view text) -> BudgetSchedule
    {
        if (text == "id")
            return BudgetSchedule();
        if (text == "sqrt")
            return BudgetSchedule("sqrt", [] (size_t s) {
                auto r = static_cast<Budget>(std::sqrt(static_cast<double>(s)));
                while (r * r > s)
                    --r;
                while ((r + 1) * (r + 1) <= s)
                    ++r;
                return r;
            });
        if (text.starts_with("div:")) {
            Budget d = 0;
            auto digits = text.substr(4);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
            if (ec != std::errc{ } || ptr != digits.data() + digits.size() || d == 0)
                throw InvalidSchedule("bad divisor in '" + string(text) + "'");
            return BudgetSchedule(string(text), [d] (size_t s) { return static_cast<Budget>(s) / d; });
        }
        throw InvalidSchedule("unknown budget schedule '" + string(text) + "'");
    }

    RunLog::RunLog(string run_id, string op, string input, Signature sig) :
        _run_id(std::move(run_id)),
        _op(std::move(op)),
        _input(std::move(input)),
        _signature(sig)
    {
    }

    auto RunLog::append(StageRecord r) -> void
    {
        r.stage = _records.size();
        _records.push_back(std::move(r));
    }

    auto RunLog::stage(size_t s) const -> FiniteDiagram
    {
        if (s >= _records.size())
            throw std::out_of_range("log has " + std::to_string(_records.size()) + " stages");
        vector<Fact> facts;
        for (size_t t = 0 ; t <= s ; ++t)
            facts.insert(facts.end(), _records[t].new_facts.begin(), _records[t].new_facts.end());
        return FiniteDiagram(_signature, std::move(facts));
    }

    auto RunLog::final_diagram() const -> FiniteDiagram
    {
        return _records.empty() ? FiniteDiagram(_signature) : stage(_records.size() - 1);
    }

    auto RunLog::prefix(size_t stages) const -> RunLog
    {
        RunLog result(_run_id, _op, _input, _signature);
        for (size_t s = 0 ; s < stages && s < _records.size() ; ++s)
            result._records.push_back(_records[s]);
        return result;
    }

    auto run(const AnyOperator & op, const StructureStream & input, size_t stages,
            const BudgetSchedule & schedule, string run_id) -> RunLog
    {
        if (stages > input.stage_count())
            throw InvalidInput("asked for " + std::to_string(stages) + " stages of a "
                    + std::to_string(input.stage_count()) + "-stage stream");
        if (input.signature() != input_signature(op))
            throw SignatureError(operator_name(op) + " expects " + signature_name(input_signature(op))
                    + " input, stream is " + signature_name(input.signature()));
        for (size_t s = 1 ; s < stages ; ++s)
            if (schedule(s) < schedule(s - 1))
                throw InvalidSchedule("schedule '" + schedule.name() + "' decreases at stage " + std::to_string(s));

        if (run_id.empty())
            run_id = operator_name(op) + "@" + input.provenance();
        RunLog log(run_id, operator_name(op), input.provenance(), output_signature(op));

        std::unique_ptr<ConstructionState> state;
        if (auto c = std::get_if<ConstructionPtr>(&op))
            state = (*c)->init();

        std::set<Fact> emitted;
        StageCursor cursor(input);
        for (size_t s = 0 ; s < stages && cursor.next() ; ++s) {
            StageRecord record;
            if (state) {
                auto step = state->step(cursor.current());
                for (auto & f : step.new_facts)
                    if (emitted.insert(f).second)
                        record.new_facts.push_back(f);
                record.annotations = std::move(step.annotation);
            }
            else {
                auto & e = *std::get<OperatorPtr>(op);
                auto out = evaluate(e, cursor.current(), schedule(s));
                for (auto & f : out.facts())
                    if (emitted.insert(f).second)
                        record.new_facts.push_back(f);
                record.annotations = e.annotate(cursor.current(), schedule(s));
            }
            log.append(std::move(record));
        }
        return log;
    }

    auto record_json(const RunLog & log, const StageRecord & r) -> json
    {
        json facts = json::array();
        for (auto & f : r.new_facts)
            facts.push_back(to_string(f));
        json j;
        j["v"] = 1;
        j["run"] = log.run_id();
        j["op"] = log.op();
        j["input"] = log.input();
        j["signature"] = signature_name(log.signature());
        j["stage"] = r.stage;
        j["new_facts"] = std::move(facts);
        j["annotations"] = r.annotations;
        return j;
    }

    auto write_run_log(std::ostream & out, const RunLog & log) -> void
    {
        for (auto & r : log.records())
            out << record_json(log, r).dump() << '\n';
    }

    auto format_run_log(const RunLog & log) -> string
    {
        std::ostringstream out;
        write_run_log(out, log);
        return out.str();
    }

    auto parse_run_log(string_view text) -> RunLog
    {
        std::optional<RunLog> log;
        size_t line_number = 0;
        while (! text.empty()) {
            ++line_number;
            auto nl = text.find('\n');
            auto line = text.substr(0, nl);
            text = (nl == string_view::npos) ? string_view{ } : text.substr(nl + 1);
            if (line.find_first_not_of(" \t\r") == string_view::npos)
                continue;

            auto where = "log line " + std::to_string(line_number) + ": ";
            json j;
            try {
                j = json::parse(line);
                if (j.at("v").get<int>() != 1)
                    throw ParseError("unsupported record version");
                if (! log)
                    log.emplace(j.at("run").get<string>(), j.at("op").get<string>(), j.at("input").get<string>(),
                            parse_signature(j.at("signature").get<string>()));
                StageRecord r;
                for (auto & f : j.at("new_facts"))
                    r.new_facts.push_back(parse_fact(f.get<string>()));
                r.annotations = j.value("annotations", json());
                if (j.at("stage").get<size_t>() != log->stage_count())
                    throw ParseError("stages out of sequence");
                log->append(std::move(r));
            }
            catch (const json::exception & e) {
                throw ParseError(where + e.what());
            }
            catch (const Error & e) {
                throw ParseError(where + e.message());
            }
        }
        if (! log)
            throw ParseError("empty run log");
        return *log;
    }
}
