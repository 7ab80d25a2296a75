# 公式的具体语法，ASCII 与 Unicode 记号可以混用
# 优先级由低到高: -> (□→)  => (⊃)  \\/ (⩒)  \/ (∨)  /\ (∧)  ~ (¬)，二元运算全部右结合
FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: selimp
            | selimp ("->" | "□→") formula  -> cf

    ?selimp: idisj
           | idisj ("=>" | "⊃") selimp     -> selimp

    ?idisj: tdisj
          | tdisj IDISJ idisj              -> idisj

    ?tdisj: conj
          | conj TDISJ tdisj               -> tdisj

    ?conj: unary
         | unary AND conj                  -> conj

    ?unary: ("~" | "¬") unary              -> neg
          | atom

    ?atom: IDENT "=" IDENT                 -> eq
         | IDENT ("!=" | "≠") IDENT        -> neq
         | BOT                             -> bot
         | TOP                             -> top
         | "=(" deplist ")"                -> dep
         | "(" formula ")"

    deplist: IDENT                         -> dep_const
           | IDENT ("," IDENT)* ";" IDENT  -> dep_full

    IDISJ.3: "\\\\/" | "⩒"
    TDISJ.2: "\\/" | "∨"
    AND.2: "/\\" | "∧"
    BOT.3: "_|_" | "⊥"
    TOP.3: "^|^" | "⊤"
    IDENT: /[A-Za-z0-9_]+/

    COMMENT: /#[^\n]*/
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""
