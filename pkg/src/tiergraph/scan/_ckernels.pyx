# cython: language_level=3
"""Compiled twin of _pykernels.find_noise_spans.

Same single-pass state machine, typed for C-speed character access.
Output must match the pure-Python kernel byte for byte; the twin test
and the benchmark both compare the two.
"""


def find_noise_spans(str source):
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t n = len(source)
    cdef Py_ssize_t end, limit
    cdef Py_UCS4 c, nxt
    spans = []
    problems = []
    while i < n:
        c = source[i]
        if c == u'/' and i + 1 < n:
            nxt = source[i + 1]
            if nxt == u'/':
                end = _find_char(source, u'\n', i, n)
                if end < 0:
                    end = n
                spans.append((i, end))
                i = end
                continue
            if nxt == u'*':
                end = _find_close_comment(source, i + 2, n)
                if end < 0:
                    problems.append(("comment", i))
                    spans.append((i, n))
                    i = n
                else:
                    spans.append((i, end))
                    i = end
                continue
            i += 1
            continue
        if c == u'@' and i + 1 < n and source[i + 1] == u'"':
            end = _scan_verbatim(source, i + 2, n)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == u'$' and i + 1 < n and source[i + 1] == u'"':
            end = _scan_quoted(source, i + 2, n)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == u'"':
            end = _scan_quoted(source, i + 1, n)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == u"'":
            end = _scan_char(source, i + 1, n)
            if end < 0:
                problems.append(("char", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        i += 1
    return spans, problems


cdef Py_ssize_t _find_char(str source, Py_UCS4 target, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t i = start
    while i < n:
        if source[i] == target:
            return i
        i += 1
    return -1


cdef Py_ssize_t _find_close_comment(str source, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t i = start
    while i + 1 < n:
        if source[i] == u'*' and source[i + 1] == u'/':
            return i + 2
        i += 1
    return -1


cdef Py_ssize_t _scan_quoted(str source, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t i = start
    cdef Py_UCS4 c
    while i < n:
        c = source[i]
        if c == u'\\':
            i += 2
            continue
        if c == u'"':
            return i + 1
        if c == u'\n':
            return -1
        i += 1
    return -1


cdef Py_ssize_t _scan_verbatim(str source, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t i = start
    while i < n:
        if source[i] == u'"':
            if i + 1 < n and source[i + 1] == u'"':
                i += 2
                continue
            return i + 1
        i += 1
    return -1


cdef Py_ssize_t _scan_char(str source, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t i = start
    cdef Py_ssize_t limit = start + 12
    cdef Py_UCS4 c
    if limit < n:
        n = limit
    while i < n:
        c = source[i]
        if c == u'\\':
            i += 2
            continue
        if c == u"'":
            return i + 1
        if c == u'\n':
            return -1
        i += 1
    return -1
