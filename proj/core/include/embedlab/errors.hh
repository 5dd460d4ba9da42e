/* vim: set sw=4 sts=4 et : */

#ifndef EMBEDLAB_GUARD_ERRORS_HH
#define EMBEDLAB_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace embedlab
{
    /// Base of every error the library reports. `kind()` is the stable name
    /// used in CLI messages and JSONL records.
    class Error : public std::runtime_error
    {
        public:
            Error(const std::string & kind, const std::string & message) :
                std::runtime_error(kind + ": " + message),
                _kind(kind),
                _message(message)
            {
            }

            auto kind() const -> const std::string &
            {
                return _kind;
            }

            /// The text without the kind prefix.
            auto message() const -> const std::string &
            {
                return _message;
            }

        private:
            std::string _kind;
            std::string _message;
    };

#define EMBEDLAB_DECLARE_ERROR(name) \
    class name : public Error \
    { \
        public: \
            explicit name(const std::string & message) : Error(#name, message) { } \
    }

    EMBEDLAB_DECLARE_ERROR(InvalidSpec);
    EMBEDLAB_DECLARE_ERROR(ParseError);
    EMBEDLAB_DECLARE_ERROR(InconsistentDiagram);
    EMBEDLAB_DECLARE_ERROR(SignatureError);
    EMBEDLAB_DECLARE_ERROR(InvalidInput);
    EMBEDLAB_DECLARE_ERROR(InvalidSchedule);
    EMBEDLAB_DECLARE_ERROR(NotInOutput);
    EMBEDLAB_DECLARE_ERROR(TooLarge);
    EMBEDLAB_DECLARE_ERROR(InvalidTarget);
    EMBEDLAB_DECLARE_ERROR(UnknownOperator);

#undef EMBEDLAB_DECLARE_ERROR
}

#endif
