using System;

namespace ShopDemo.Data.Db
{
    public static class SqlRunner
    {
        public static int Execute(string sql)
        {
            return 1;
        }

        public static string Scalar(string sql)
        {
            return "0";
        }
    }
}
