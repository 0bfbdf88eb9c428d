using System;
using ShopDemo.Data.Db;

namespace ShopDemo.Data
{
    public class ReportRepository
    {
        public int TallyOrders()
        {
            return SqlRunner.Execute("select count(*) from orders");
        }

        public int TallyUsers()
        {
            return SqlRunner.Execute("select count(*) from users");
        }
    }
}
