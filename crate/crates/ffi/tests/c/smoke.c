#include <stdio.h>
#include <string.h>
#include "lst20.h"

static const char *TEXT =
    "\xe0\xb8\xaa\xe0\xb8\xb8\xe0\xb8\x99\xe0\xb8\xb1\xe0\xb8\x82\tNN\tO\tB_CLS\n"
    "\xe0\xb8\xa7\xe0\xb8\xb4\xe0\xb9\x88\xe0\xb8\x87\tVV\tO\tE_CLS\n";

int main(void) {
    Lst20Document *doc = NULL;
    if (lst20_document_read(TEXT, LST20_FORMAT_COLUMNAR, "smoke", &doc) != LST20_STATUS_OK) {
        fprintf(stderr, "read: %s\n", lst20_last_error());
        return 1;
    }
    size_t errors = 99, warnings = 99;
    if (lst20_document_lint(doc, false, &errors, &warnings, NULL) != LST20_STATUS_OK || errors != 0) {
        return 2;
    }
    char *inline_text = NULL;
    if (lst20_document_write(doc, LST20_FORMAT_INLINE, 4, &inline_text) != LST20_STATUS_OK) {
        return 3;
    }
    printf("%s", inline_text);
    lst20_string_free(inline_text);
    lst20_document_free(doc);
    if (lst20_document_read(NULL, LST20_FORMAT_COLUMNAR, NULL, &doc) != LST20_STATUS_NULL_ARG) {
        return 4;
    }
    return lst20_last_error() == NULL ? 5 : 0;
}
