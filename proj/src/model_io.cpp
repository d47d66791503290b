#include "itpn/model_io.hpp"

#include "itpn/errors.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace itpn {

namespace {

std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

std::uint32_t parse_count(const std::string& text, int line, const char* what)
{
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size() || v < 0 || v > 0xffffffffL)
            throw std::invalid_argument(text);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("bad ") + what + " '" + text + "'");
    }
}

Rational parse_number(const std::string& text, int line)
{
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw ParseError(line, "bad number '" + text + "'");
    }
}

}  // namespace

Net parse_model(std::string_view text)
{
    NetBuilder b;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        auto w = split_words(raw);
        if (w.empty())
            continue;
        try {
            const auto& kw = w[0];
            if (kw == "place") {
                if (w.size() < 2 || w.size() > 3)
                    throw ParseError(line, "expected: place <name> [tokens]");
                b.add_place(w[1], w.size() == 3 ? parse_count(w[2], line, "token count") : 0);
            } else if (kw == "trans") {
                if (w.size() < 2)
                    throw ParseError(line, "expected: trans <name> [tmin,tmax]");
                std::string iv;
                for (std::size_t k = 2; k < w.size(); ++k)
                    iv += w[k];
                if (iv.size() < 5 || iv.front() != '[' || iv.back() != ']' || iv.find(',') == std::string::npos)
                    throw ParseError(line, "expected an interval [tmin,tmax]");
                auto comma = iv.find(',');
                auto lo = parse_number(iv.substr(1, comma - 1), line);
                auto hi_text = iv.substr(comma + 1, iv.size() - comma - 2);
                Bound hi = hi_text == "inf" ? Bound::infinity() : Bound(parse_number(hi_text, line));
                if (lo < 0)
                    throw ParseError(line, "negative tmin");
                if (hi < Bound(lo))
                    throw ParseError(line, "empty static interval");
                b.add_transition(w[1], lo, hi);
            } else if (kw == "arc") {
                if (w.size() < 4 || w.size() > 5 || w[2] != "->")
                    throw ParseError(line, "expected: arc <from> -> <to> [weight]");
                auto weight = w.size() == 5 ? parse_count(w[4], line, "weight") : 1;
                if (weight == 0)
                    throw ParseError(line, "zero arc weight");
                bool from_place = true, from_trans = true;
                try { b.place(w[1]); } catch (const ContractError&) { from_place = false; }
                try { b.transition(w[1]); } catch (const ContractError&) { from_trans = false; }
                if (from_place)
                    b.add_input(b.place(w[1]), b.transition(w[3]), weight);
                else if (from_trans)
                    b.add_output(b.transition(w[1]), b.place(w[3]), weight);
                else
                    throw ParseError(line, "unknown node '" + w[1] + "'");
            } else if (kw == "inhibit") {
                if (w.size() < 4 || w.size() > 5 || w[2] != "-o")
                    throw ParseError(line, "expected: inhibit <place> -o <trans> [weight]");
                auto weight = w.size() == 5 ? parse_count(w[4], line, "weight") : 1;
                if (weight == 0)
                    throw ParseError(line, "zero inhibitor weight");
                b.add_inhibitor(b.place(w[1]), b.transition(w[3]), weight);
            } else {
                throw ParseError(line, "unknown keyword '" + kw + "'");
            }
        } catch (const ContractError& e) {
            throw ParseError(line, e.what());
        }
    }
    return b.build();
}

Net load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string print_model(const Net& net)
{
    std::ostringstream os;
    for (PlaceId p = 0; p < net.place_count(); ++p) {
        os << "place " << net.place_name(p);
        if (net.initial_marking()[p] != 0)
            os << ' ' << net.initial_marking()[p];
        os << '\n';
    }
    for (TransitionId t = 0; t < net.transition_count(); ++t)
        os << "trans " << net.transition_name(t) << " [" << to_string(net.tmin(t)) << ',' << net.tmax(t) << "]\n";
    auto weight = [](std::uint32_t w) { return w == 1 ? std::string() : ' ' + std::to_string(w); };
    for (TransitionId t = 0; t < net.transition_count(); ++t) {
        for (PlaceId p = 0; p < net.place_count(); ++p)
            if (auto w = net.pre(p, t))
                os << "arc " << net.place_name(p) << " -> " << net.transition_name(t) << weight(w) << '\n';
        for (PlaceId p = 0; p < net.place_count(); ++p)
            if (auto w = net.post(p, t))
                os << "arc " << net.transition_name(t) << " -> " << net.place_name(p) << weight(w) << '\n';
        for (PlaceId p = 0; p < net.place_count(); ++p)
            if (auto w = net.inhibitor(p, t))
                os << "inhibit " << net.place_name(p) << " -o " << net.transition_name(t) << weight(w) << '\n';
    }
    return os.str();
}

}  // namespace itpn
