/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_RUN_LOG_HH
#define EMBEDLAB_GUARD_RUN_LOG_HH 1

#include <embedlab/operator.hh>
#include <embedlab/stream.hh>

#include <nlohmann/json.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace embedlab
{
    /// Stage to budget map. Named schedules: "id", "div:<d>", "sqrt".
    class BudgetSchedule
    {
        public:
            BudgetSchedule();
            BudgetSchedule(std::string name, std::function<Budget (std::size_t)>);

            auto name() const -> const std::string & { return _name; }
            auto operator() (std::size_t stage) const -> Budget { return _fn(stage); }

        private:
            std::string _name;
            std::function<Budget (std::size_t)> _fn;
    };

    auto parse_budget_schedule(std::string_view) -> BudgetSchedule;

    struct StageRecord
    {
        std::size_t stage = 0;
        std::vector<Fact> new_facts;
        nlohmann::json annotations;

        auto operator== (const StageRecord &) const -> bool = default;
    };

    class RunLog
    {
        public:
            RunLog(std::string run_id, std::string op, std::string input, Signature);

            auto run_id() const -> const std::string & { return _run_id; }
            auto op() const -> const std::string & { return _op; }
            auto input() const -> const std::string & { return _input; }
            auto signature() const -> Signature { return _signature; }
            auto records() const -> const std::vector<StageRecord> & { return _records; }
            auto stage_count() const -> std::size_t { return _records.size(); }

            auto append(StageRecord) -> void;

            /// Cumulative output after stage s.
            auto stage(std::size_t s) const -> FiniteDiagram;
            auto final_diagram() const -> FiniteDiagram;

            /// The first `stages` records as a log of their own.
            auto prefix(std::size_t stages) const -> RunLog;

            auto operator== (const RunLog &) const -> bool = default;

        private:
            std::string _run_id;
            std::string _op;
            std::string _input;
            Signature _signature;
            std::vector<StageRecord> _records;
    };

    /// Stage s output is the operator on input stage s at budget schedule(s),
    /// or the construction's step on that stage. Throws InvalidSchedule if the
    /// schedule decreases anywhere in range, InvalidInput if `stages` exceeds
    /// the stream.
    auto run(const AnyOperator &, const StructureStream & input, std::size_t stages,
            const BudgetSchedule & = BudgetSchedule(), std::string run_id = "") -> RunLog;

    /// One `"v":1` JSON object per stage.
    auto record_json(const RunLog &, const StageRecord &) -> nlohmann::json;
    auto write_run_log(std::ostream &, const RunLog &) -> void;
    auto format_run_log(const RunLog &) -> std::string;
    auto parse_run_log(std::string_view text) -> RunLog;
}

#endif
