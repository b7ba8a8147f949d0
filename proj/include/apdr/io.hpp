#pragma once

#include "apdr/mdp.hpp"
#include "apdr/ts.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace apdr
{

class parse_error : public std::runtime_error
{
    std::size_t _line;

public:
    parse_error( std::size_t line, const std::string& reason )
        : std::runtime_error( "line " + std::to_string( line ) + ": " + reason ), _line{ line }
    {}

    [[nodiscard]] std::size_t line() const { return _line; }
};

class index_out_of_range : public parse_error
{
public:
    index_out_of_range( std::size_t line, std::size_t index, std::size_t states )
        : parse_error( line, "state index " + std::to_string( index ) + " out of range (" + std::to_string( states ) + " states)" )
    {}
};

TransitionSystem parse_ts( std::string_view text );
std::string serialize_ts( const TransitionSystem& ts );

Mdp parse_mdp( std::string_view text );
std::string serialize_mdp( const Mdp& mdp );

using Model = std::variant< TransitionSystem, Mdp >;

// Dispatches on the header line ("ts" or "mdp").
Model parse_model( std::string_view text );

std::string read_text_file( const std::filesystem::path& path );
Model load_model( const std::filesystem::path& path );

} // namespace apdr
