# 工作区文件的单行语法；块结构由 loader 按关键字行维护
WORKSPACE_LINE_GRAMMAR = r"""
    ?start: signature | var_decl | fc | fn | table_row | ct | gct | row | member

    signature: "signature"
    var_decl: "var" NAME ":" VALUE+
    fc: "fc" NAME
    fn: "fn" NAME "<-" NAME*
    table_row: VALUE* "=>" VALUE
    ct: "ct" NAME "of" NAME
    gct: "gct" NAME
    row: "row" VALUE*
    member: "member" NAME ":" VALUE*

    NAME: /[A-Za-z_][A-Za-z0-9_]*/
    VALUE: /[A-Za-z0-9_.+\-]+/

    %import common.WS_INLINE
    %ignore WS_INLINE
"""

KEYWORDS = ("signature", "var", "fc", "fn", "ct", "gct", "row", "member", "of")
